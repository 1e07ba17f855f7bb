#include "ta/flep.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "ta/errors.hpp"
#include "ta/text.hpp"

namespace ta {

std::vector<double> travel_times(const Route& r, const RoadNetwork& net, double s) {
  if (!(s >= 1.0)) throw ValidationError("slowdown s must be >= 1");
  std::vector<double> tt;
  tt.reserve(r.edges.size());
  double agg = 0.0;
  for (const auto e : r.edges) {
    agg += net.edge(e).weight * s;
    tt.push_back(agg);
  }
  return tt;
}

std::optional<std::size_t> first_unvisited_index(std::span<const double> tt, double dt) {
  const auto it = std::upper_bound(tt.begin(), tt.end(), dt);
  if (it == tt.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tt.begin());
}

double penalized_weight(double base, double p, std::uint32_t n) {
  double w = base;
  for (std::uint32_t i = 0; i < n; ++i) w *= 1.0 + p;
  return w;
}

namespace {

void check_departure(double departure, double now) {
  if (departure > now)
    throw ValidationError("assigned route departs at " + text::format_double(departure) + ", after query time " +
                          text::format_double(now));
}

}  // namespace

std::vector<std::uint32_t> penalty_counts(const RoadNetwork& net, std::span<const AssignedRoute> assigned, double s,
                                          double now, Penalization mode) {
  std::vector<std::uint32_t> counts(net.edge_count(), 0);
  if (mode == Penalization::none) return counts;
  for (const auto& a : assigned) {
    check_departure(a.departure, now);
    const auto tt = travel_times(a.route, net, s);
    const auto i = first_unvisited_index(tt, now - a.departure);
    if (!i) continue;
    const std::size_t from = mode == Penalization::full_path ? 0 : *i;
    for (std::size_t j = from; j < a.route.edges.size(); ++j) ++counts[a.route.edges[j]];
  }
  return counts;
}

WeightLayer flep(const RoadNetwork& net, std::span<const AssignedRoute> assigned, double p, double s, double now,
                 Penalization mode) {
  if (!(p > 0.0)) throw ValidationError("penalty p must be > 0");
  const auto counts = penalty_counts(net, assigned, s, now, mode);
  WeightLayer h(net);
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (counts[e] > 0) h.set(e, penalized_weight(net.edge(e).weight, p, counts[e]));
  return h;
}

FlepTracker::FlepTracker(const RoadNetwork& net, double p, double s, Penalization mode)
    : net_(&net), p_(p), s_(s), mode_(mode), counts_(net.edge_count(), 0), layer_(net) {
  if (!(p > 0.0)) throw ValidationError("penalty p must be > 0");
  if (!(s >= 1.0)) throw ValidationError("slowdown s must be >= 1");
}

void FlepTracker::bump(EdgeId e, int delta) {
  counts_[e] = static_cast<std::uint32_t>(static_cast<int>(counts_[e]) + delta);
  if (counts_[e] == 0)
    layer_.reset(e);
  else
    layer_.set(e, penalized_weight(net_->edge(e).weight, p_, counts_[e]));
}

std::size_t FlepTracker::start_index(const Vehicle& v) const {
  const auto i = first_unvisited_index(v.tt, now_ - v.departure);
  if (!i) return v.edges.size();
  return mode_ == Penalization::full_path ? 0 : *i;
}

void FlepTracker::advance(double now) {
  if (now < now_) throw ValidationError("FLEP query times must not decrease");
  now_ = now;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    auto& v = active_[i];
    const auto start = start_index(v);
    for (; v.next < start; ++v.next) bump(v.edges[v.next], -1);
    if (v.next == v.edges.size()) continue;
    if (kept != i) active_[kept] = std::move(v);
    ++kept;
  }
  active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(kept), active_.end());
}

void FlepTracker::add(const AssignedRoute& r) {
  check_departure(r.departure, now_);
  if (mode_ == Penalization::none) return;
  Vehicle v{r.route.edges, travel_times(r.route, *net_, s_), r.departure, 0};
  v.next = start_index(v);
  if (v.next >= v.edges.size()) return;
  for (std::size_t j = v.next; j < v.edges.size(); ++j) bump(v.edges[j], +1);
  active_.push_back(std::move(v));
}

void write_penalties(std::ostream& out, std::span<const std::uint32_t> counts, const WeightLayer& layer) {
  out << "edge_id,penalty_count,weight\n";
  for (EdgeId e = 0; e < counts.size(); ++e)
    if (counts[e] > 0) out << e << ',' << counts[e] << ',' << text::format_double(layer.weight(e)) << '\n';
}

}  // namespace ta
