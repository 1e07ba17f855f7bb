#include "ta/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "ta/errors.hpp"

namespace ta {

RoadNetwork make_grid_network(const GridSpec& spec) {
  if (spec.cols < 1 || spec.rows < 1 || (spec.cols == 1 && spec.rows == 1))
    throw ValidationError("grid needs at least two intersections");
  if (!(spec.spacing > 0.0)) throw ValidationError("grid spacing must be positive");

  std::mt19937_64 rng(spec.seed);
  // 30, 40 and 50 km/h local streets.
  constexpr std::array<double, 3> local_speeds = {30.0 / 3.6, 40.0 / 3.6, 50.0 / 3.6};
  constexpr double arterial_speed = 70.0 / 3.6;
  std::uniform_int_distribution<std::size_t> pick(0, local_speeds.size() - 1);
  std::uniform_real_distribution<double> stretch(1.0, 1.15);

  const auto is_arterial = [&](int i) { return spec.arterial_every > 0 && i % spec.arterial_every == 0; };

  // One speed per street so both directions and all blocks agree.
  std::vector<double> row_speed(spec.rows);
  std::vector<double> col_speed(spec.cols);
  for (int r = 0; r < spec.rows; ++r) row_speed[r] = is_arterial(r) ? arterial_speed : local_speeds[pick(rng)];
  for (int c = 0; c < spec.cols; ++c) col_speed[c] = is_arterial(c) ? arterial_speed : local_speeds[pick(rng)];

  std::vector<Point> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.cols) * spec.rows);
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c) nodes.push_back({c * spec.spacing, r * spec.spacing});

  const auto node = [&](int c, int r) { return static_cast<NodeId>(r * spec.cols + c); };
  std::vector<EdgeSpec> edges;
  const auto link = [&](NodeId a, NodeId b, double speed, bool arterial) {
    // Curvature makes block lengths slightly longer than the straight line.
    const double length = spec.spacing * stretch(rng);
    const int lanes = arterial ? 2 : 1;
    edges.push_back({a, b, length, speed, lanes});
    edges.push_back({b, a, length, speed, lanes});
  };
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      if (c + 1 < spec.cols) link(node(c, r), node(c + 1, r), row_speed[r], is_arterial(r));
      if (r + 1 < spec.rows) link(node(c, r), node(c, r + 1), col_speed[c], is_arterial(c));
    }
  }
  return RoadNetwork(std::move(nodes), edges);
}

std::vector<ODRecord> make_clustered_od_records(const RoadNetwork& net, const ClusterSpec& spec) {
  if (net.node_count() == 0) throw ValidationError("network has no nodes");
  if (spec.hotspots < 1) throw ValidationError("need at least one hotspot");
  if (spec.hotspot_share < 0.0 || spec.hotspot_share > 1.0) throw ValidationError("hotspot share must be in [0, 1]");
  if (!(spec.radius >= 0.0)) throw ValidationError("hotspot radius must be >= 0");

  Point lo = net.position(0);
  Point hi = lo;
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& p = net.position(n);
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ux(lo.x, std::nextafter(hi.x, hi.x + 1.0));
  std::uniform_real_distribution<double> uy(lo.y, std::nextafter(hi.y, hi.y + 1.0));
  const auto uniform = [&] { return Point{ux(rng), uy(rng)}; };
  const auto clamp = [&](Point p) { return Point{std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y)}; };

  std::vector<std::pair<Point, Point>> centres;
  for (int h = 0; h < spec.hotspots; ++h) {
    const auto o = uniform();
    centres.emplace_back(o, uniform());
  }
  std::bernoulli_distribution hot(spec.hotspot_share);
  std::uniform_int_distribution<std::size_t> which(0, centres.size() - 1);
  std::normal_distribution<double> noise(0.0, spec.radius > 0.0 ? spec.radius : 1.0);
  const double scale = spec.radius > 0.0 ? 1.0 : 0.0;

  std::vector<ODRecord> out;
  out.reserve(spec.records);
  for (std::size_t i = 0; i < spec.records; ++i) {
    if (hot(rng)) {
      const auto& [o, d] = centres[which(rng)];
      const Point po{o.x + scale * noise(rng), o.y + scale * noise(rng)};
      const Point pd{d.x + scale * noise(rng), d.y + scale * noise(rng)};
      out.push_back({clamp(po), clamp(pd)});
    } else {
      const auto o = uniform();
      out.push_back({o, uniform()});
    }
  }
  return out;
}

}  // namespace ta
