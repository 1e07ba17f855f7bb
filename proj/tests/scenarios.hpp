#pragma once

// Fixtures shared by the unit tests and the acceptance runner.

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "ta/demand.hpp"
#include "ta/flep.hpp"
#include "ta/synthetic.hpp"

namespace ta::testing {

// Two routes from node 0 to node 3 with five vehicles in transit at t = 100.
//   top:    t0(30) e1(24) e2(62)
//   bottom: b0(15) e5(10) e4(72) e3(20)
struct TwoRoute {
  RoadNetwork net;
  EdgeId e1, e2, e3, e4, e5;
  std::vector<AssignedRoute> vehicles;
  double now = 100.0;
};

inline TwoRoute two_route_fixture() {
  TwoRoute f{network_from_arcs(7, {{0, 1, 30}, {1, 2, 24}, {2, 3, 62}, {0, 4, 15}, {4, 5, 10}, {5, 6, 72}, {6, 3, 20}}),
         1, 2, 6, 5, 4, {}, 100.0};
  const Route top{{0, 1, 2}, 0, 3, 116};
  const Route bottom{{3, 4, 5, 6}, 0, 3, 117};
  // Elapsed times put c1 on e1, c2 on e2, c3 on e5, c4 on e4, c5 on e3.
  const double top_elapsed[] = {31, 55};
  const double bottom_elapsed[] = {16, 26, 98};
  TripId id = 1;
  for (const double dt : top_elapsed) f.vehicles.push_back({top, f.now - dt, id++});
  for (const double dt : bottom_elapsed) f.vehicles.push_back({bottom, f.now - dt, id++});
  return f;
}

// Three target edges e1, e2, e3 (ids 0..2) in separate components, each with
// feeder edges starting in A1 = tile (0,0) or A2 = tile (1,0).
struct UsageCase {
  RoadNetwork net;
  MobilityDemand demand;
};

inline UsageCase usage_fixture() {
  std::vector<Point> pos = {
      {500, 0},   {1500, 0},   {0, 0},    {1100, 0},  {1600, 0},    // 0..4: X1 Y1 a1 b1 Z1
      {500, 300}, {1500, 300}, {0, 300},  {1600, 300},              // 5..8: X2 Y2 a2 Z2
      {1200, 600}, {500, 600}, {0, 600}, {1100, 650}, {400, 600},  // 9..13: X3 Y3 a3 b3 Z3
  };
  std::vector<EdgeSpec> e = {
      {0, 1, 1000, 10, 1},    // e1
      {5, 6, 1000, 10, 1},    // e2
      {9, 10, 700, 10, 1},    // e3
      {2, 0, 500, 10, 1},     // 3: a1 -> X1
      {3, 0, 600, 10, 1},     // 4: b1 -> X1
      {1, 4, 100, 10, 1},     // 5: Y1 -> Z1
      {7, 5, 500, 10, 1},     // 6: a2 -> X2
      {6, 8, 100, 10, 1},     // 7: Y2 -> Z2
      {11, 9, 1200, 10, 1},   // 8: a3 -> X3
      {12, 9, 100, 10, 1},    // 9: b3 -> X3
      {10, 13, 100, 10, 1},   // 10: Y3 -> Z3
  };
  UsageCase f{RoadNetwork(std::move(pos), e), {}};
  f.demand.trips = {
      {0, 3, 5, 0.0}, {1, 4, 5, 1.0},   // through e1: from A1 and A2, to A2
      {2, 6, 7, 2.0},                   // through e2: from A1, to A2
      {3, 8, 10, 3.0}, {4, 9, 10, 4.0}, // through e3: from A1 and A2, to A1
  };
  return f;
}

struct PurityOutcome {
  double max_relative_gap = 0.0;      // incremental vs from-scratch layer
  double max_count_residual = 0.0;    // log-recovered count vs nearest integer
  bool counts_match = true;           // recovered counts equal the projected counts
  std::size_t checks = 0;
};

// Random routes on a small grid, departing over ten minutes; the tracker and
// flep() are compared at a sequence of increasing query times.
inline PurityOutcome flep_purity_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto net = make_grid_network({12, 12, 100, 4, seed});
  const WeightLayer base(net);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(net.node_count() - 1));
  std::uniform_real_distribution<double> when(0.0, 600.0);
  std::uniform_real_distribution<double> p_dist(0.01, 0.5);
  std::uniform_real_distribution<double> s_dist(1.0, 3.0);
  const double p = p_dist(rng);
  const double s = s_dist(rng);

  std::vector<AssignedRoute> routes;
  for (TripId id = 0; routes.size() < 60; ++id) {
    const auto o = node(rng);
    const auto d = node(rng);
    if (o == d) continue;
    routes.push_back({fastest_path(base, o, d), when(rng), id});
  }
  std::stable_sort(routes.begin(), routes.end(),
                   [](const AssignedRoute& a, const AssignedRoute& b) { return a.departure < b.departure; });

  PurityOutcome out;
  FlepTracker tracker(net, p, s);
  std::vector<AssignedRoute> added;
  std::size_t next = 0;
  for (double now = 0.0; now <= 900.0; now += 37.5) {
    tracker.advance(now);
    while (next < routes.size() && routes[next].departure <= now) {
      tracker.add(routes[next]);
      added.push_back(routes[next++]);
    }
    const auto scratch = flep(net, added, p, s, now);
    const auto counts = penalty_counts(net, added, s, now);
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const double a = tracker.layer().weight(e);
      const double b = scratch.weight(e);
      out.max_relative_gap = std::max(out.max_relative_gap, std::abs(a - b) / b);
      const double n = std::log(b / net.edge(e).weight) / std::log1p(p);
      out.max_count_residual = std::max(out.max_count_residual, std::abs(n - std::round(n)));
      if (std::llround(n) != counts[e] || tracker.counts()[e] != counts[e]) out.counts_match = false;
      ++out.checks;
    }
  }
  return out;
}

}  // namespace ta::testing
