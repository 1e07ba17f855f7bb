#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ta/demand.hpp"
#include "ta/flep.hpp"
#include "ta/kroad.hpp"
#include "ta/routing.hpp"

namespace ta {

struct Assignment {
  Trip trip;
  Route route;
};

struct FailedTrip {
  Trip trip;
  std::string reason;  // no_path | same_endpoints
};

struct StageTimings {
  double init_s = 0.0;
  double penalize_s = 0.0;
  double search_s = 0.0;
  double select_s = 0.0;
  double total_s = 0.0;
};

struct AssignmentResult {
  std::string algorithm;
  std::vector<Assignment> assignments;  // demand order
  std::vector<FailedTrip> failed;
  TimeWindow window;
  std::vector<std::pair<std::string, std::string>> config;  // every parameter and seed, in a fixed order
  StageTimings timings;

  std::vector<Route> routes() const;
};

// Per-edge inputs of the route score, frozen before assignment starts.
struct ScoringContext {
  std::vector<double> k_source;
  std::vector<double> k_end;
  std::vector<double> capacity;  // veh/h
};

ScoringContext make_scoring_context(const UsageNetwork& usage, const RoadNetwork& net);

// kroute_source(r) * kroute_end(r) / C_r, lower is better; C_r is the
// length-weighted mean capacity.
double route_score(const Route& r, const ScoringContext& ctx, const RoadNetwork& net);

// Index of the best candidate: lowest score, then lowest cost, then
// lexicographically smallest edge sequence.
std::size_t select_route(std::span<const Route> candidates, const ScoringContext& ctx, const RoadNetwork& net);

enum class Selection { score, random };

struct MetisOptions {
  double p = 0.025;
  double s = 2.25;
  int k = 3;
  KmdOptions kmd{};
  Penalization penalization = Penalization::forward_looking;
  Selection selection = Selection::score;
  std::uint64_t seed = 0;  // used by random selection only
};

// Called once per trip with the penalized layer and the candidate set.
using TripObserver = std::function<void(const Trip&, const WeightLayer&, std::span<const Route>)>;

AssignmentResult metis_assign(const RoadNetwork& net, const MobilityDemand& demand, const TileGrid& grid,
                              const MetisOptions& opts, const TripObserver& observer = {});

// Free-flow fastest path per trip.
AssignmentResult aon_assign(const RoadNetwork& net, const MobilityDemand& demand);

double bpr_travel_time(double t_free, double volume, double capacity, double alpha, double beta);

struct ItaOptions {
  std::vector<double> splits{0.4, 0.3, 0.2, 0.1};
  double alpha = 0.15;
  double beta = 4.0;
  std::vector<double> capacities;  // veh/h per edge; empty means derived from the network
};

// End index of each split over n trips (cumulative floor, last one is n).
std::vector<std::size_t> split_boundaries(std::size_t n, std::span<const double> splits);

AssignmentResult ita_assign(const RoadNetwork& net, const MobilityDemand& demand, const ItaOptions& opts = {});

enum class Generator { pp, gr, pr, kd, pla, kmd };

struct AlternativeOptions {
  Generator generator = Generator::kmd;
  int k = 3;
  double p = 0.2;      // PP
  double delta = 0.2;  // GR, PR
  KmdOptions kmd{};
  std::uint64_t seed = 0;
};

std::string to_string(Generator g);

// Per-trip seed derived from the run seed.
std::uint64_t trip_seed(std::uint64_t seed, TripId trip);

std::vector<Route> generate_alternatives(const WeightLayer& w, NodeId o, NodeId d, const AlternativeOptions& opts,
                                         std::uint64_t seed);

// Alternative routing used as assignment: k routes per trip on free-flow
// weights, one picked uniformly at random.
AssignmentResult alternatives_assign(const RoadNetwork& net, const MobilityDemand& demand,
                                     const AlternativeOptions& opts);

}  // namespace ta
