#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ta/network.hpp"
#include "ta/weight_layer.hpp"

namespace ta {

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

// A directed path o -> d as an edge sequence. An empty route means o == d.
struct Route {
  std::vector<EdgeId> edges;
  NodeId origin = 0;
  NodeId destination = 0;
  double cost = 0.0;  // seconds, under the layer that produced the route

  bool empty() const { return edges.empty(); }
  friend bool operator==(const Route& a, const Route& b) {
    return a.origin == b.origin && a.destination == b.destination && a.edges == b.edges;
  }
};

// Lexicographic comparison of edge sequences, the global tie-break order.
bool edge_sequence_less(const Route& a, const Route& b);

// Sum of layer weights along the route, accumulated in path order.
double route_cost(const Route& r, const WeightLayer& w);

// Connected, node-simple, starts at r.origin and ends at r.destination.
bool is_simple_path(const Route& r, const RoadNetwork& net);

// Minimal-cost path. Equal-cost relaxations keep the smaller predecessor edge
// id. o == d yields an empty route. Throws NoPathError when d is unreachable.
Route fastest_path(const WeightLayer& w, NodeId o, NodeId d);

enum class Direction { forward, reverse };

struct ShortestPathTree {
  NodeId root = 0;
  Direction direction = Direction::forward;
  std::vector<double> distance;     // +inf when unreachable
  std::vector<EdgeId> parent_edge;  // forward: edge entering the node; reverse: edge leaving it

  bool reached(NodeId n) const { return distance[n] != std::numeric_limits<double>::infinity(); }
  // Tree path between root and n, oriented along the road direction.
  Route path(NodeId n, const RoadNetwork& net) const;
};

ShortestPathTree shortest_path_tree(const WeightLayer& w, NodeId root, Direction direction);

// Called with (iteration, layer used for that iteration's search).
using LayerObserver = std::function<void(int, const WeightLayer&)>;

// Path penalization: after each search the found edges are multiplied by
// (1 + p), cumulatively. Returns exactly k routes (duplicates possible).
std::vector<Route> pp_routes(const WeightLayer& w, NodeId o, NodeId d, int k, double p);

inline constexpr double kWeightFloor = 1e-6;

// Graph randomization: every edge gets w + N(0, (w * delta)^2), clamped at
// kWeightFloor, freshly drawn for each of the k searches.
std::vector<Route> gr_routes(const WeightLayer& w, NodeId o, NodeId d, int k, double delta,
                             std::uint64_t seed, const LayerObserver& observer = {});

// Path randomization: like gr_routes, but only the previous route's edges are
// perturbed. The first route is the unperturbed fastest path.
std::vector<Route> pr_routes(const WeightLayer& w, NodeId o, NodeId d, int k, double delta,
                             std::uint64_t seed, const LayerObserver& observer = {});

// Edge-disjoint paths by repeated extraction; fewer than k when exhausted.
std::vector<Route> kd_routes(const WeightLayer& w, NodeId o, NodeId d, int k);

// Plateau alternatives from the forward tree of o and the reverse tree of d.
std::vector<Route> plateau_routes(const WeightLayer& w, NodeId o, NodeId d, int k);

struct KmdOptions {
  double epsilon = 0.3;
  double penalty_step = 0.1;
  int max_iters = 50;
};

// Near-shortest candidates found by the penalization heuristic, in discovery
// order (the fastest path first). All have cost <= (1 + epsilon) * fastest.
std::vector<Route> kmd_candidates(const WeightLayer& w, NodeId o, NodeId d, const KmdOptions& opts);

// Indices of the k-subset with the largest minimum pairwise Jaccard distance;
// the lexicographically first subset wins ties. |routes| <= k returns all.
std::vector<std::size_t> most_diverse_subset(std::span<const Route> routes, int k);

std::vector<Route> kmd_routes(const WeightLayer& w, NodeId o, NodeId d, int k, const KmdOptions& opts = {});

// |A n B| / |A u B| over edge sets; two empty routes are identical (1).
double jaccard_similarity(const Route& a, const Route& b);

// Minimum pairwise Jaccard distance; +inf for fewer than two routes.
double min_pairwise_distance(std::span<const Route> routes);

}  // namespace ta
