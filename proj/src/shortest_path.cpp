#include <algorithm>
#include <queue>
#include <utility>

#include "ta/errors.hpp"
#include "ta/routing.hpp"

namespace ta {

void WeightLayer::set(EdgeId e, double w) {
  if (!(w > 0.0)) throw ValidationError("edge weights must stay positive");
  weights_[e] = w;
}

std::vector<EdgeId> WeightLayer::overrides() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < weights_.size(); ++e)
    if (overridden(e)) out.push_back(e);
  return out;
}

bool edge_sequence_less(const Route& a, const Route& b) {
  return std::lexicographical_compare(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end());
}

double route_cost(const Route& r, const WeightLayer& w) {
  double cost = 0.0;
  for (const auto e : r.edges) cost += w[e];
  return cost;
}

bool is_simple_path(const Route& r, const RoadNetwork& net) {
  if (r.origin >= net.node_count() || r.destination >= net.node_count()) return false;
  if (r.edges.empty()) return r.origin == r.destination;
  std::vector<char> seen(net.node_count(), 0);
  NodeId at = r.origin;
  seen[at] = 1;
  for (const auto e : r.edges) {
    if (e >= net.edge_count()) return false;
    const auto& edge = net.edge(e);
    if (edge.from != at) return false;
    at = edge.to;
    if (seen[at]) return false;
    seen[at] = 1;
  }
  return at == r.destination;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Label-setting search shared by point-to-point queries and full trees.
// `target` == node_count() runs to exhaustion.
void dijkstra(const WeightLayer& w, NodeId root, Direction direction, NodeId target,
              std::vector<double>& dist, std::vector<EdgeId>& parent) {
  const auto& net = w.network();
  const auto n = net.node_count();
  dist.assign(n, kInf);
  parent.assign(n, kNoEdge);
  std::vector<char> settled(n, 0);

  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[root] = 0.0;
  heap.emplace(0.0, root);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == target) return;
    const auto incident = direction == Direction::forward ? net.out_edges(u) : net.in_edges(u);
    for (const auto e : incident) {
      const double we = w[e];
      if (std::isinf(we)) continue;
      const auto& edge = net.edge(e);
      const NodeId v = direction == Direction::forward ? edge.to : edge.from;
      if (settled[v]) continue;
      const double nd = d + we;
      if (nd < dist[v] || (nd == dist[v] && e < parent[v])) {
        const bool improved = nd < dist[v];
        dist[v] = nd;
        parent[v] = e;
        if (improved) heap.emplace(nd, v);
      }
    }
  }
}

}  // namespace

Route fastest_path(const WeightLayer& w, NodeId o, NodeId d) {
  const auto& net = w.network();
  if (o >= net.node_count() || d >= net.node_count()) throw ValidationError("node id out of range");
  Route r;
  r.origin = o;
  r.destination = d;
  if (o == d) return r;

  std::vector<double> dist;
  std::vector<EdgeId> parent;
  dijkstra(w, o, Direction::forward, d, dist, parent);
  if (dist[d] == kInf) throw NoPathError("no path from node " + std::to_string(net.node_label(o)) + " to node " +
                                         std::to_string(net.node_label(d)));
  for (NodeId at = d; at != o;) {
    const auto e = parent[at];
    r.edges.push_back(e);
    at = net.edge(e).from;
  }
  std::reverse(r.edges.begin(), r.edges.end());
  r.cost = dist[d];
  return r;
}

ShortestPathTree shortest_path_tree(const WeightLayer& w, NodeId root, Direction direction) {
  const auto& net = w.network();
  if (root >= net.node_count()) throw ValidationError("node id out of range");
  ShortestPathTree tree;
  tree.root = root;
  tree.direction = direction;
  dijkstra(w, root, direction, static_cast<NodeId>(net.node_count()), tree.distance, tree.parent_edge);
  return tree;
}

Route ShortestPathTree::path(NodeId n, const RoadNetwork& net) const {
  if (!reached(n)) throw NoPathError("node not reached by shortest-path tree");
  Route r;
  if (direction == Direction::forward) {
    r.origin = root;
    r.destination = n;
    for (NodeId at = n; at != root;) {
      const auto e = parent_edge[at];
      r.edges.push_back(e);
      at = net.edge(e).from;
    }
    std::reverse(r.edges.begin(), r.edges.end());
  } else {
    r.origin = n;
    r.destination = root;
    for (NodeId at = n; at != root;) {
      const auto e = parent_edge[at];
      r.edges.push_back(e);
      at = net.edge(e).to;
    }
  }
  r.cost = distance[n];
  return r;
}

namespace {

std::vector<EdgeId> edge_set(const Route& r) {
  std::vector<EdgeId> s = r.edges;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

double jaccard_sorted(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const auto uni = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

}  // namespace

double jaccard_similarity(const Route& a, const Route& b) { return jaccard_sorted(edge_set(a), edge_set(b)); }

double min_pairwise_distance(std::span<const Route> routes) {
  double best = kInf;
  std::vector<std::vector<EdgeId>> sets;
  sets.reserve(routes.size());
  for (const auto& r : routes) sets.push_back(edge_set(r));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) best = std::min(best, 1.0 - jaccard_sorted(sets[i], sets[j]));
  return best;
}

std::vector<std::size_t> most_diverse_subset(std::span<const Route> routes, int k) {
  std::vector<std::size_t> all(routes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (k < 1) return {};
  if (routes.size() <= static_cast<std::size_t>(k)) return all;

  const auto n = routes.size();
  std::vector<std::vector<EdgeId>> sets;
  sets.reserve(n);
  for (const auto& r : routes) sets.push_back(edge_set(r));
  std::vector<double> distance(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      distance[i * n + j] = distance[j * n + i] = 1.0 - jaccard_sorted(sets[i], sets[j]);

  // Depth-first over combinations in lexicographic order. A branch is cut
  // once its partial minimum cannot strictly beat the incumbent, so the first
  // optimal subset in lexicographic order is the one kept.
  const auto size = static_cast<std::size_t>(k);
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  double best_value = -1.0;
  std::function<void(std::size_t, double)> extend = [&](std::size_t next, double partial) {
    if (current.size() == size) {
      if (partial > best_value) {
        best_value = partial;
        best = current;
      }
      return;
    }
    for (std::size_t i = next; i + (size - current.size()) <= n; ++i) {
      double m = partial;
      for (const auto j : current) m = std::min(m, distance[i * n + j]);
      if (!(m > best_value)) continue;
      current.push_back(i);
      extend(i + 1, m);
      current.pop_back();
    }
  };
  extend(0, kInf);
  return best;
}

}  // namespace ta
