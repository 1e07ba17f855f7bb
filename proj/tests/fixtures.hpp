#pragma once

#include <functional>
#include <random>
#include <tuple>
#include <vector>

#include "ta/network.hpp"
#include "ta/routing.hpp"

namespace ta::testing {

struct Arc {
  NodeId from;
  NodeId to;
  double weight;  // seconds; encoded as length with a 1 m/s speed limit
  int lanes = 1;
};

inline RoadNetwork network_from_arcs(std::size_t nodes, const std::vector<Arc>& arcs) {
  std::vector<Point> pos;
  for (std::size_t i = 0; i < nodes; ++i) pos.push_back({static_cast<double>(i) * 10.0, 0.0});
  std::vector<EdgeSpec> specs;
  for (const auto& a : arcs) specs.push_back({a.from, a.to, a.weight, 1.0, a.lanes});
  return RoadNetwork(std::move(pos), specs);
}

// Random digraph on n nodes; each ordered pair gets an arc with probability
// `density`, weights uniform in [1, 10).
inline RoadNetwork random_network(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::uniform_real_distribution<double> weight(1.0, 10.0);
  std::vector<Arc> arcs;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b && coin(rng)) arcs.push_back({a, b, weight(rng)});
  if (arcs.empty()) arcs.push_back({0, 1, weight(rng)});
  return network_from_arcs(n, arcs);
}

// Exhaustive enumeration of node-simple paths o -> d (o != d).
inline std::vector<std::vector<EdgeId>> all_simple_paths(const RoadNetwork& net, NodeId o, NodeId d) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<char> on_path(net.node_count(), 0);
  std::vector<EdgeId> current;
  std::function<void(NodeId)> walk = [&](NodeId at) {
    if (at == d) {
      out.push_back(current);
      return;
    }
    on_path[at] = 1;
    for (const auto& e : net.edges()) {
      if (e.from != at || on_path[e.to]) continue;
      current.push_back(e.id);
      walk(e.to);
      current.pop_back();
    }
    on_path[at] = 0;
  };
  walk(o);
  return out;
}

inline double path_weight(const std::vector<EdgeId>& path, const std::vector<double>& weights) {
  double sum = 0.0;
  for (const auto e : path) sum += weights[e];
  return sum;
}

}  // namespace ta::testing
