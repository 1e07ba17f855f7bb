#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "ta/demand.hpp"
#include "ta/network.hpp"
#include "ta/routing.hpp"

namespace ta {

using AreaFlows = std::map<AreaId, std::uint64_t>;

inline constexpr double kMajorDriverShare = 0.8;

// Smallest prefix of areas, by count descending then area id ascending, whose
// cumulative share of the total reaches `threshold`. Returned in that order.
std::vector<AreaId> major_driver_set(const AreaFlows& flows, double threshold = kMajorDriverShare);

// Per-edge trip counts keyed by the trips' origin and destination areas.
class FlowTally {
 public:
  explicit FlowTally(std::size_t edge_count) : by_source_(edge_count), by_end_(edge_count) {}

  void add(const Route& route, AreaId origin_area, AreaId destination_area);
  // Order-independent: merging tallies in any order gives the same result.
  void merge(const FlowTally& other);

  const AreaFlows& source_flows(EdgeId e) const { return by_source_[e]; }
  const AreaFlows& end_flows(EdgeId e) const { return by_end_[e]; }
  std::size_t edge_count() const { return by_source_.size(); }

 private:
  std::vector<AreaFlows> by_source_;
  std::vector<AreaFlows> by_end_;
};

// Bipartite area <-> edge usage graph. K_road(source) of an edge is the size
// of its major driver source set, K_road(end) of its major driver destination set.
struct UsageNetwork {
  std::vector<std::vector<AreaId>> source_links;
  std::vector<std::vector<AreaId>> end_links;
  std::size_t skipped_trips = 0;  // trips without a free-flow path

  double k_source(EdgeId e) const { return static_cast<double>(source_links[e].size()); }
  double k_end(EdgeId e) const { return static_cast<double>(end_links[e].size()); }
};

UsageNetwork usage_from_tally(const FlowTally& tally, double threshold = kMajorDriverShare);

// Origin area: tile of the origin edge's start node. Destination area: tile
// of the destination edge's start node.
AreaId trip_origin_area(const Trip& trip, const RoadNetwork& net, const TileGrid& grid);
AreaId trip_destination_area(const Trip& trip, const RoadNetwork& net, const TileGrid& grid);

// Routing endpoints of a trip: start node of the origin edge, end node of the
// destination edge.
NodeId trip_origin_node(const Trip& trip, const RoadNetwork& net);
NodeId trip_destination_node(const Trip& trip, const RoadNetwork& net);

// Replays every trip along its free-flow fastest path and derives the usage graph.
UsageNetwork estimate_kroad(const RoadNetwork& net, const MobilityDemand& demand, const TileGrid& grid);

// Σ v(e)·l(e) / Σ l(e) over the route's edges. Throws UndefinedError on an
// empty route.
double length_weighted_mean(const Route& r, std::span<const double> per_edge, const RoadNetwork& net);

// Length-weighted mean of K_road over the route's edges. Throws UndefinedError
// on an empty route.
double kroute_source(const Route& r, const UsageNetwork& usage, const RoadNetwork& net);
double kroute_end(const Route& r, const UsageNetwork& usage, const RoadNetwork& net);

// edge_id,k_source,k_end
void write_usage(std::ostream& out, const UsageNetwork& usage);

}  // namespace ta
