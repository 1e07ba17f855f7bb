#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ta/assign.hpp"
#include "ta/metrics.hpp"

namespace ta {

// Route set document:
//
//   # algorithm=<tag>
//   # window=<start>,<end>
//   # <key>=<value>          one line per config entry
//   # failed_trips=<n>
//   trip_id,algorithm,origin_edge,destination_edge,departure_s,cost_s,edges
//   3,metis,12,40,17.5,212.25,12 13 27 40
//
// Edge ids are space separated. Timings are not written, so identical runs
// give identical bytes.
void write_routes(std::ostream& out, const AssignmentResult& result);

struct RouteSet {
  AssignmentResult result;  // failed trips are only counted
  std::size_t failed_trips = 0;
};

// Validates every route against the network (known edges, connected).
RouteSet read_routes(std::istream& in, const RoadNetwork& net);
RouteSet read_routes_file(const std::string& path, const RoadNetwork& net);

// trip_id,reason
void write_failed(std::ostream& out, const AssignmentResult& result);

// edge_id,traversals
void write_edge_usage(std::ostream& out, const AssignmentResult& result, const RoadNetwork& net);

struct MetricsOptions {
  double t = kDefaultRedWindow;
  double sigma = kDefaultRedShift;
  std::optional<EmissionCoefficients> emission;  // no proxy without coefficients
  double profile_step = 1.0;                     // s
};

struct MetricsReport {
  std::string algorithm;
  double rc_percent = 0.0;
  std::optional<double> red;
  double t = kDefaultRedWindow;
  double sigma = kDefaultRedShift;
  std::optional<double> red_time;
  std::optional<double> emission_proxy_total;
  std::size_t failed_trips = 0;
};

MetricsReport compute_metrics(const AssignmentResult& result, const RoadNetwork& net, const MetricsOptions& opts,
                              std::size_t failed_trips);

// Pretty-printed JSON with keys algorithm, RC_percent, RED,
// RED_time{t, sigma, value}, emission_proxy_total, failed_trips.
std::string metrics_json(const MetricsReport& report);

// window_start,red,emission_proxy for every non-empty window; emission_proxy
// is empty without coefficients.
void write_redundancy_scatter(std::ostream& out, const AssignmentResult& result, const RoadNetwork& net,
                              const MetricsOptions& opts);

// Two named numeric columns of a CSV document with a header row.
std::vector<ScatterPoint> read_scatter(std::istream& in, const std::string& x_column, const std::string& y_column);

EmissionCoefficients parse_emission_coefficients(const std::string& csv);

}  // namespace ta
