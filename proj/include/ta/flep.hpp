#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ta/demand.hpp"
#include "ta/routing.hpp"

namespace ta {

struct AssignedRoute {
  Route route;
  double departure = 0.0;
  TripId trip = 0;
};

// Which edges of an in-transit vehicle's route are penalized.
enum class Penalization {
  forward_looking,  // the edge being traversed and everything after it
  full_path,        // every edge of the route until arrival
  none,
};

// Cumulative slowed travel time after each edge, from base free-flow weights.
std::vector<double> travel_times(const Route& r, const RoadNetwork& net, double s);

// Zero-based index of the first entry strictly greater than dt; nullopt when
// the vehicle has arrived (dt >= last entry, or an empty list).
std::optional<std::size_t> first_unvisited_index(std::span<const double> tt, double dt);

// Number of vehicles projected over each edge at time `now`.
std::vector<std::uint32_t> penalty_counts(const RoadNetwork& net, std::span<const AssignedRoute> assigned, double s,
                                          double now, Penalization mode = Penalization::forward_looking);

// base * (1 + p)^n, as n successive multiplications.
double penalized_weight(double base, double p, std::uint32_t n);

// Fresh layer over base weights with every projected edge penalized once per
// vehicle. Throws ValidationError when a departure lies after `now`.
WeightLayer flep(const RoadNetwork& net, std::span<const AssignedRoute> assigned, double p, double s, double now,
                 Penalization mode = Penalization::forward_looking);

// Same layer as flep(), maintained incrementally. Query times must not
// decrease; vehicles are dropped once they arrive.
class FlepTracker {
 public:
  FlepTracker(const RoadNetwork& net, double p, double s, Penalization mode = Penalization::forward_looking);

  void advance(double now);
  // The route departs at or before the current time.
  void add(const AssignedRoute& r);

  const WeightLayer& layer() const { return layer_; }
  std::span<const std::uint32_t> counts() const { return counts_; }
  double now() const { return now_; }
  std::size_t in_transit() const { return active_.size(); }

 private:
  struct Vehicle {
    std::vector<EdgeId> edges;
    std::vector<double> tt;
    double departure;
    std::size_t next;  // first penalized position
  };

  std::size_t start_index(const Vehicle& v) const;
  void bump(EdgeId e, int delta);

  const RoadNetwork* net_;
  double p_;
  double s_;
  Penalization mode_;
  double now_ = -std::numeric_limits<double>::infinity();
  std::vector<Vehicle> active_;
  std::vector<std::uint32_t> counts_;
  WeightLayer layer_;
};

// edge_id,penalty_count,weight for every penalized edge.
void write_penalties(std::ostream& out, std::span<const std::uint32_t> counts, const WeightLayer& layer);

}  // namespace ta
