#include "ta/assign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "ta/errors.hpp"
#include "ta/text.hpp"

namespace ta {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return text::format_double(v); }

std::string num_list(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += num(v[i]);
  }
  return out;
}

// Resolves the trip to routing endpoints; records a failure and returns false
// when the trip cannot be routed.
bool endpoints(const Trip& t, const RoadNetwork& net, AssignmentResult& res, NodeId& o, NodeId& d) {
  o = trip_origin_node(t, net);
  d = trip_destination_node(t, net);
  if (o != d) return true;
  res.failed.push_back({t, "same_endpoints"});
  return false;
}

}  // namespace

std::vector<Route> AssignmentResult::routes() const {
  std::vector<Route> out;
  out.reserve(assignments.size());
  for (const auto& a : assignments) out.push_back(a.route);
  return out;
}

ScoringContext make_scoring_context(const UsageNetwork& usage, const RoadNetwork& net) {
  ScoringContext ctx;
  ctx.k_source.resize(net.edge_count());
  ctx.k_end.resize(net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    ctx.k_source[e] = usage.k_source(e);
    ctx.k_end[e] = usage.k_end(e);
  }
  ctx.capacity = edge_capacities(net);
  return ctx;
}

double route_score(const Route& r, const ScoringContext& ctx, const RoadNetwork& net) {
  const double ks = length_weighted_mean(r, ctx.k_source, net);
  const double ke = length_weighted_mean(r, ctx.k_end, net);
  const double cr = length_weighted_mean(r, ctx.capacity, net);
  return ks * ke / cr;
}

std::size_t select_route(std::span<const Route> candidates, const ScoringContext& ctx, const RoadNetwork& net) {
  if (candidates.empty()) throw ValidationError("no candidate routes");
  std::size_t best = 0;
  double best_score = route_score(candidates[0], ctx, net);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double sc = route_score(candidates[i], ctx, net);
    const auto& a = candidates[i];
    const auto& b = candidates[best];
    const bool better = sc != best_score   ? sc < best_score
                        : a.cost != b.cost ? a.cost < b.cost
                                           : edge_sequence_less(a, b);
    if (better) {
      best = i;
      best_score = sc;
    }
  }
  return best;
}

std::uint64_t trip_seed(std::uint64_t seed, TripId trip) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trip) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

AssignmentResult metis_assign(const RoadNetwork& net, const MobilityDemand& demand, const TileGrid& grid,
                              const MetisOptions& opts, const TripObserver& observer) {
  if (opts.k < 1) throw ValidationError("k must be >= 1");
  const auto t0 = Clock::now();
  AssignmentResult res;
  res.algorithm = "metis";
  res.window = demand.window;
  res.config = {{"p", num(opts.p)},
                {"s", num(opts.s)},
                {"k", std::to_string(opts.k)},
                {"epsilon", num(opts.kmd.epsilon)},
                {"kmd_penalty_step", num(opts.kmd.penalty_step)},
                {"kmd_max_iters", std::to_string(opts.kmd.max_iters)},
                {"penalization", opts.penalization == Penalization::forward_looking ? "forward_looking"
                                 : opts.penalization == Penalization::full_path     ? "full_path"
                                                                                    : "none"},
                {"selection", opts.selection == Selection::score ? "score" : "random"},
                {"seed", std::to_string(opts.seed)}};

  if (demand.trips.empty()) return res;
  const auto ctx = make_scoring_context(estimate_kroad(net, demand, grid), net);
  FlepTracker tracker(net, opts.p, opts.s, opts.penalization);
  res.timings.init_s = seconds_since(t0);

  for (const auto& trip : demand.trips) {
    NodeId o = 0;
    NodeId d = 0;
    if (!endpoints(trip, net, res, o, d)) continue;

    auto t = Clock::now();
    tracker.advance(trip.departure);
    res.timings.penalize_s += seconds_since(t);

    t = Clock::now();
    std::vector<Route> candidates;
    try {
      candidates = kmd_routes(tracker.layer(), o, d, opts.k, opts.kmd);
    } catch (const NoPathError&) {
      res.timings.search_s += seconds_since(t);
      res.failed.push_back({trip, "no_path"});
      continue;
    }
    res.timings.search_s += seconds_since(t);
    if (observer) observer(trip, tracker.layer(), candidates);

    t = Clock::now();
    std::size_t pick = 0;
    if (opts.selection == Selection::score) {
      pick = select_route(candidates, ctx, net);
    } else {
      std::mt19937_64 rng(trip_seed(opts.seed, trip.id));
      pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng);
    }
    res.timings.select_s += seconds_since(t);

    t = Clock::now();
    tracker.add({candidates[pick], trip.departure, trip.id});
    res.timings.penalize_s += seconds_since(t);
    res.assignments.push_back({trip, std::move(candidates[pick])});
  }
  res.timings.total_s = seconds_since(t0);
  return res;
}

AssignmentResult aon_assign(const RoadNetwork& net, const MobilityDemand& demand) {
  const auto t0 = Clock::now();
  AssignmentResult res;
  res.algorithm = "aon";
  res.window = demand.window;
  const WeightLayer free_flow(net);
  for (const auto& trip : demand.trips) {
    NodeId o = 0;
    NodeId d = 0;
    if (!endpoints(trip, net, res, o, d)) continue;
    try {
      res.assignments.push_back({trip, fastest_path(free_flow, o, d)});
    } catch (const NoPathError&) {
      res.failed.push_back({trip, "no_path"});
    }
  }
  res.timings.search_s = res.timings.total_s = seconds_since(t0);
  return res;
}

double bpr_travel_time(double t_free, double volume, double capacity, double alpha, double beta) {
  if (!(capacity > 0.0)) throw ValidationError("capacity must be > 0");
  return t_free * (1.0 + alpha * std::pow(volume / capacity, beta));
}

std::vector<std::size_t> split_boundaries(std::size_t n, std::span<const double> splits) {
  if (splits.empty()) throw ValidationError("at least one split is required");
  double sum = 0.0;
  for (const double f : splits) {
    if (!(f > 0.0)) throw ValidationError("split fractions must be > 0");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("split fractions must sum to 1");
  std::vector<std::size_t> out;
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    cumulative += splits[i];
    // The tolerance absorbs representation error such as 0.4+0.3+0.2 < 0.9.
    const auto b = static_cast<std::size_t>(std::floor(static_cast<double>(n) * cumulative + 1e-6));
    out.push_back(std::min(b, n));
  }
  out.push_back(n);
  return out;
}

AssignmentResult ita_assign(const RoadNetwork& net, const MobilityDemand& demand, const ItaOptions& opts) {
  const auto t0 = Clock::now();
  const auto bounds = split_boundaries(demand.trips.size(), opts.splits);
  const auto capacity = opts.capacities.empty() ? edge_capacities(net) : opts.capacities;
  if (capacity.size() != net.edge_count()) throw ValidationError("capacity vector does not match the network");
  const double hours = demand.window.length() / 3600.0;
  if (!(hours > 0.0)) throw ValidationError("empty demand window");

  AssignmentResult res;
  res.algorithm = "ita";
  res.window = demand.window;
  res.config = {{"splits", num_list(opts.splits)}, {"alpha", num(opts.alpha)}, {"beta", num(opts.beta)}};

  WeightLayer w(net);
  std::vector<std::uint64_t> traversals(net.edge_count(), 0);
  std::size_t begin = 0;
  for (const auto end : bounds) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& trip = demand.trips[i];
      NodeId o = 0;
      NodeId d = 0;
      if (!endpoints(trip, net, res, o, d)) continue;
      try {
        auto r = fastest_path(w, o, d);
        for (const auto e : r.edges) ++traversals[e];
        res.assignments.push_back({trip, std::move(r)});
      } catch (const NoPathError&) {
        res.failed.push_back({trip, "no_path"});
      }
    }
    begin = end;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const double volume = static_cast<double>(traversals[e]) / hours;
      w.set(e, bpr_travel_time(net.edge(e).weight, volume, capacity[e], opts.alpha, opts.beta));
    }
  }
  res.timings.search_s = res.timings.total_s = seconds_since(t0);
  return res;
}

std::string to_string(Generator g) {
  switch (g) {
    case Generator::pp: return "pp";
    case Generator::gr: return "gr";
    case Generator::pr: return "pr";
    case Generator::kd: return "kd";
    case Generator::pla: return "pla";
    case Generator::kmd: return "kmd";
  }
  return "?";
}

std::vector<Route> generate_alternatives(const WeightLayer& w, NodeId o, NodeId d, const AlternativeOptions& opts,
                                         std::uint64_t seed) {
  switch (opts.generator) {
    case Generator::pp: return pp_routes(w, o, d, opts.k, opts.p);
    case Generator::gr: return gr_routes(w, o, d, opts.k, opts.delta, seed);
    case Generator::pr: return pr_routes(w, o, d, opts.k, opts.delta, seed);
    case Generator::kd: return kd_routes(w, o, d, opts.k);
    case Generator::pla: return plateau_routes(w, o, d, opts.k);
    case Generator::kmd: return kmd_routes(w, o, d, opts.k, opts.kmd);
  }
  return {};
}

AssignmentResult alternatives_assign(const RoadNetwork& net, const MobilityDemand& demand,
                                     const AlternativeOptions& opts) {
  if (opts.k < 1) throw ValidationError("k must be >= 1");
  const auto t0 = Clock::now();
  AssignmentResult res;
  res.algorithm = to_string(opts.generator);
  res.window = demand.window;
  res.config = {{"k", std::to_string(opts.k)}, {"seed", std::to_string(opts.seed)}};
  switch (opts.generator) {
    case Generator::pp: res.config.emplace_back("p", num(opts.p)); break;
    case Generator::gr:
    case Generator::pr: res.config.emplace_back("delta", num(opts.delta)); break;
    case Generator::kmd:
      res.config.emplace_back("epsilon", num(opts.kmd.epsilon));
      res.config.emplace_back("kmd_penalty_step", num(opts.kmd.penalty_step));
      res.config.emplace_back("kmd_max_iters", std::to_string(opts.kmd.max_iters));
      break;
    default: break;
  }

  const WeightLayer free_flow(net);
  for (const auto& trip : demand.trips) {
    NodeId o = 0;
    NodeId d = 0;
    if (!endpoints(trip, net, res, o, d)) continue;
    std::mt19937_64 rng(trip_seed(opts.seed, trip.id));
    const auto generator_seed = rng();
    std::vector<Route> routes;
    try {
      routes = generate_alternatives(free_flow, o, d, opts, generator_seed);
    } catch (const NoPathError&) {
    }
    if (routes.empty()) {
      res.failed.push_back({trip, "no_path"});
      continue;
    }
    const auto pick = std::uniform_int_distribution<std::size_t>(0, routes.size() - 1)(rng);
    res.assignments.push_back({trip, std::move(routes[pick])});
  }
  res.timings.search_s = res.timings.total_s = seconds_since(t0);
  return res;
}

}  // namespace ta
