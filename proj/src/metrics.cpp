#include "ta/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ta/errors.hpp"

namespace ta {

double road_coverage(std::span<const Route> routes, const RoadNetwork& net) {
  std::vector<char> seen(net.edge_count(), 0);
  double covered = 0.0;
  for (const auto& r : routes)
    for (const auto e : r.edges) {
      if (e >= net.edge_count()) throw ValidationError("route references unknown edge " + std::to_string(e));
      if (seen[e]) continue;
      seen[e] = 1;
      covered += net.edge(e).length;
    }
  return 100.0 * covered / net.total_length();
}

double redundancy(std::span<const Route> routes) {
  std::vector<EdgeId> all;
  for (const auto& r : routes) all.insert(all.end(), r.edges.begin(), r.edges.end());
  if (all.empty()) throw UndefinedError("redundancy is undefined without routes");
  const double traversals = static_cast<double>(all.size());
  std::sort(all.begin(), all.end());
  const auto distinct = std::unique(all.begin(), all.end()) - all.begin();
  return traversals / static_cast<double>(distinct);
}

double time_redundancy(std::span<const Assignment> assignments, double t, double sigma, double t0, double tmax,
                       bool strict) {
  if (!(t > 0.0) || !(sigma > 0.0)) throw ValidationError("window length and shift must be > 0");
  std::vector<const Assignment*> order;
  for (const auto& a : assignments) order.push_back(&a);
  std::stable_sort(order.begin(), order.end(),
                   [](const Assignment* a, const Assignment* b) { return a->trip.departure < b->trip.departure; });

  double sum = 0.0;
  std::size_t windows = 0;
  std::vector<Route> batch;
  for (std::size_t j = 0;; ++j) {
    const double start = t0 + static_cast<double>(j) * sigma;
    if (start > tmax) break;
    const auto lo = std::lower_bound(order.begin(), order.end(), start,
                                     [](const Assignment* a, double v) { return a->trip.departure < v; });
    const auto hi = std::lower_bound(lo, order.end(), start + t,
                                     [](const Assignment* a, double v) { return a->trip.departure < v; });
    batch.clear();
    for (auto it = lo; it != hi; ++it)
      if (!(*it)->route.empty()) batch.push_back((*it)->route);
    if (batch.empty()) {
      if (strict) throw UndefinedError("window starting at " + std::to_string(start) + " s has no routes");
      continue;
    }
    sum += redundancy(batch);
    ++windows;
  }
  if (windows == 0) throw UndefinedError("time redundancy is undefined: every window is empty");
  return sum / static_cast<double>(windows);
}

double time_redundancy(const AssignmentResult& result, double t, double sigma, bool strict) {
  const double t0 = result.window.start;
  return time_redundancy(result.assignments, t, sigma, t0, std::max(t0, result.window.end - t), strict);
}

double hbefa3_emission(double speed, double accel, const EmissionCoefficients& c) {
  const double s = speed;
  const double a = accel;
  const double e = c.c[0] + c.c[1] * s * a + c.c[2] * s * a * a + c.c[3] * s + c.c[4] * s * s + c.c[5] * s * s * s;
  return std::max(0.0, e);
}

double trajectory_emissions(const SpeedProfile& profile, const EmissionCoefficients& c) {
  double total = 0.0;
  for (const auto& p : profile.samples) total += hbefa3_emission(p.speed, p.accel, c) * profile.step;
  return total;
}

SpeedProfile synth_freeflow_profile(const Route& r, const RoadNetwork& net, double s, double step) {
  if (!(step > 0.0)) throw ValidationError("profile step must be > 0");
  if (!(s >= 1.0)) throw ValidationError("slowdown s must be >= 1");
  SpeedProfile out;
  out.step = step;
  if (r.edges.empty()) return out;

  std::vector<double> ends;
  std::vector<double> speeds;
  double clock = 0.0;
  for (const auto e : r.edges) {
    clock += net.edge(e).weight * s;
    ends.push_back(clock);
    speeds.push_back(net.edge(e).max_speed / s);
  }
  const auto n = static_cast<std::size_t>(std::ceil(clock / step));
  std::size_t edge = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * step;
    while (edge + 1 < ends.size() && t >= ends[edge]) ++edge;
    const double v = speeds[edge];
    const double a = out.samples.empty() ? 0.0 : (v - out.samples.back().speed) / step;
    out.samples.push_back({t, v, a});
  }
  return out;
}

Correlation correlation_report(std::span<const ScatterPoint> points) {
  if (points.size() < 3) throw ValidationError("correlation needs at least 3 points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    syy += (p.y - my) * (p.y - my);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedError("degenerate: zero variance");
  Correlation c;
  c.n = points.size();
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  c.slope = sxy / sxx;
  c.intercept = my - c.slope * mx;
  return c;
}

}  // namespace ta
