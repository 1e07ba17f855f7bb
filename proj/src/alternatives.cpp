#include <algorithm>
#include <random>

#include "ta/errors.hpp"
#include "ta/routing.hpp"

namespace ta {

namespace {

void require_k(int k) {
  if (k < 1) throw ValidationError("k must be at least 1");
}

// Report a route found on a scratch layer with its cost under the caller's layer.
Route priced(Route r, const WeightLayer& w) {
  r.cost = route_cost(r, w);
  return r;
}

void perturb(WeightLayer& layer, EdgeId e, double delta, std::normal_distribution<double>& normal,
             std::mt19937_64& rng) {
  const double base = layer[e];
  if (std::isinf(base)) return;
  const double noisy = base + base * delta * normal(rng);
  layer.set(e, std::max(noisy, kWeightFloor));
}

}  // namespace

std::vector<Route> pp_routes(const WeightLayer& w, NodeId o, NodeId d, int k, double p) {
  require_k(k);
  if (!(p > 0.0)) throw ValidationError("penalty must be positive");
  if (o == d) return {fastest_path(w, o, d)};
  WeightLayer scratch = w;
  std::vector<Route> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    auto r = fastest_path(scratch, o, d);
    for (const auto e : r.edges) scratch.scale(e, 1.0 + p);
    out.push_back(priced(std::move(r), w));
  }
  return out;
}

std::vector<Route> gr_routes(const WeightLayer& w, NodeId o, NodeId d, int k, double delta, std::uint64_t seed,
                             const LayerObserver& observer) {
  require_k(k);
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  if (o == d) return {fastest_path(w, o, d)};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Route> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    WeightLayer noisy = w;
    for (EdgeId e = 0; e < w.network().edge_count(); ++e) perturb(noisy, e, delta, normal, rng);
    if (observer) observer(i, noisy);
    out.push_back(priced(fastest_path(noisy, o, d), w));
  }
  return out;
}

std::vector<Route> pr_routes(const WeightLayer& w, NodeId o, NodeId d, int k, double delta, std::uint64_t seed,
                             const LayerObserver& observer) {
  require_k(k);
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  if (o == d) return {fastest_path(w, o, d)};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Route> out;
  out.reserve(k);
  if (observer) observer(0, w);
  out.push_back(fastest_path(w, o, d));
  for (int i = 1; i < k; ++i) {
    WeightLayer noisy = w;
    for (const auto e : out.back().edges) perturb(noisy, e, delta, normal, rng);
    if (observer) observer(i, noisy);
    out.push_back(priced(fastest_path(noisy, o, d), w));
  }
  return out;
}

std::vector<Route> kd_routes(const WeightLayer& w, NodeId o, NodeId d, int k) {
  require_k(k);
  if (o == d) return {fastest_path(w, o, d)};
  WeightLayer scratch = w;
  std::vector<Route> out;
  out.push_back(fastest_path(scratch, o, d));
  while (out.size() < static_cast<std::size_t>(k)) {
    for (const auto e : out.back().edges) scratch.remove(e);
    try {
      out.push_back(priced(fastest_path(scratch, o, d), w));
    } catch (const NoPathError&) {
      break;
    }
  }
  return out;
}

std::vector<Route> plateau_routes(const WeightLayer& w, NodeId o, NodeId d, int k) {
  require_k(k);
  const auto& net = w.network();
  auto fastest = fastest_path(w, o, d);
  if (o == d) return {fastest};

  const auto fwd = shortest_path_tree(w, o, Direction::forward);
  const auto rev = shortest_path_tree(w, d, Direction::reverse);
  const auto on_both = [&](EdgeId e) {
    const auto& edge = net.edge(e);
    return fwd.parent_edge[edge.to] == e && rev.parent_edge[edge.from] == e;
  };

  struct Plateau {
    std::vector<EdgeId> edges;
    double length = 0.0;
  };
  std::vector<Plateau> plateaus;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!on_both(e)) continue;
    // Chains start where the forward-tree predecessor is not itself shared.
    const auto pred = fwd.parent_edge[net.edge(e).from];
    if (pred != kNoEdge && on_both(pred)) continue;
    Plateau p;
    for (EdgeId at = e; at != kNoEdge && on_both(at); at = rev.parent_edge[net.edge(at).to]) {
      p.edges.push_back(at);
      p.length += w[at];
    }
    plateaus.push_back(std::move(p));
  }
  std::stable_sort(plateaus.begin(), plateaus.end(),
                   [](const Plateau& a, const Plateau& b) { return a.length > b.length; });

  std::vector<Route> out;
  out.push_back(std::move(fastest));
  for (const auto& p : plateaus) {
    if (out.size() >= static_cast<std::size_t>(k)) break;
    const NodeId start = net.edge(p.edges.front()).from;
    const NodeId end = net.edge(p.edges.back()).to;
    Route r = fwd.path(start, net);
    r.edges.insert(r.edges.end(), p.edges.begin(), p.edges.end());
    const auto tail = rev.path(end, net);
    r.edges.insert(r.edges.end(), tail.edges.begin(), tail.edges.end());
    r.origin = o;
    r.destination = d;
    // Tree paths around a remote plateau can revisit nodes; such joins are not routes.
    if (!is_simple_path(r, net)) continue;
    if (std::find(out.begin(), out.end(), r) != out.end()) continue;
    out.push_back(priced(std::move(r), w));
  }
  return out;
}

std::vector<Route> kmd_candidates(const WeightLayer& w, NodeId o, NodeId d, const KmdOptions& opts) {
  if (!(opts.epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
  if (!(opts.penalty_step > 0.0)) throw ValidationError("penalty step must be positive");
  std::vector<Route> found;
  found.push_back(fastest_path(w, o, d));
  if (o == d) return found;
  const double threshold = found.front().cost * (1.0 + opts.epsilon);

  WeightLayer scratch = w;
  std::vector<EdgeId> last = found.front().edges;
  for (int iter = 1; iter < opts.max_iters; ++iter) {
    for (const auto e : last) scratch.scale(e, 1.0 + opts.penalty_step);
    auto candidate = priced(fastest_path(scratch, o, d), w);
    if (candidate.cost > threshold) break;
    last = candidate.edges;
    if (std::find(found.begin(), found.end(), candidate) == found.end()) found.push_back(std::move(candidate));
  }
  return found;
}

std::vector<Route> kmd_routes(const WeightLayer& w, NodeId o, NodeId d, int k, const KmdOptions& opts) {
  require_k(k);
  auto candidates = kmd_candidates(w, o, d, opts);
  std::vector<Route> out;
  for (const auto i : most_diverse_subset(candidates, k)) out.push_back(std::move(candidates[i]));
  return out;
}

}  // namespace ta
