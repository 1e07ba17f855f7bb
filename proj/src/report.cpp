#include "ta/report.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>

#include "ta/errors.hpp"
#include "ta/text.hpp"

namespace ta {
namespace {

constexpr std::string_view kRouteHeader = "trip_id,algorithm,origin_edge,destination_edge,departure_s,cost_s,edges";

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const auto j = s.find(' ', i);
    const auto end = j == std::string_view::npos ? s.size() : j;
    if (end > i) out.push_back(s.substr(i, end - i));
    i = end;
  }
  return out;
}

double emissions_of(const Route& r, const RoadNetwork& net, const EmissionCoefficients& c, double step) {
  return trajectory_emissions(synth_freeflow_profile(r, net, 1.0, step), c);
}

}  // namespace

void write_routes(std::ostream& out, const AssignmentResult& result) {
  out << "# algorithm=" << result.algorithm << '\n';
  out << "# window=" << text::format_double(result.window.start) << ',' << text::format_double(result.window.end)
      << '\n';
  for (const auto& [k, v] : result.config) out << "# " << k << '=' << v << '\n';
  out << "# failed_trips=" << result.failed.size() << '\n';
  out << kRouteHeader << '\n';
  for (const auto& a : result.assignments) {
    out << a.trip.id << ',' << result.algorithm << ',' << a.trip.origin_edge << ',' << a.trip.destination_edge << ','
        << text::format_double(a.trip.departure) << ',' << text::format_double(a.route.cost) << ',';
    for (std::size_t i = 0; i < a.route.edges.size(); ++i) out << (i ? " " : "") << a.route.edges[i];
    out << '\n';
  }
}

RouteSet read_routes(std::istream& in, const RoadNetwork& net) {
  RouteSet set;
  auto& res = set.result;
  bool header = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = text::trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string key(text::trim(body.substr(0, eq)));
      const std::string value(text::trim(body.substr(eq + 1)));
      if (key == "algorithm") {
        res.algorithm = value;
      } else if (key == "window") {
        const auto parts = text::split(value, ',');
        const auto a = parts.size() == 2 ? text::parse_double(parts[0]) : std::nullopt;
        const auto b = parts.size() == 2 ? text::parse_double(parts[1]) : std::nullopt;
        if (!a || !b) throw ParseError("malformed window", line_no);
        res.window = {*a, *b};
      } else if (key == "failed_trips") {
        const auto n = text::parse_int(value);
        if (!n || *n < 0) throw ParseError("malformed failed_trips", line_no);
        set.failed_trips = static_cast<std::size_t>(*n);
      } else {
        res.config.emplace_back(key, value);
      }
      continue;
    }
    if (!header) {
      if (line != kRouteHeader) throw ParseError("unexpected column header", line_no);
      header = true;
      continue;
    }
    const auto f = text::split(line, ',');
    if (f.size() != 7) throw ParseError("expected 7 fields", line_no);
    const auto id = text::parse_int(f[0]);
    const auto o = text::parse_int(f[2]);
    const auto d = text::parse_int(f[3]);
    const auto dep = text::parse_double(f[4]);
    const auto cost = text::parse_double(f[5]);
    if (!id || !o || !d || !dep || !cost || *id < 0 || *o < 0 || *d < 0)
      throw ParseError("malformed route record", line_no);
    if (res.algorithm.empty()) res.algorithm = std::string(f[1]);

    const auto prefix = "line " + std::to_string(line_no) + ": ";
    const auto edge_count = static_cast<std::int64_t>(net.edge_count());
    Route r;
    for (const auto tok : split_spaces(f[6])) {
      const auto e = text::parse_int(tok);
      if (!e) throw ParseError("malformed edge id", line_no);
      if (*e < 0 || *e >= edge_count)
        throw ValidationError(prefix + "route references unknown edge " + std::string(tok));
      r.edges.push_back(static_cast<EdgeId>(*e));
    }
    if (*o >= edge_count || *d >= edge_count) throw ValidationError(prefix + "trip references an unknown edge");
    for (std::size_t i = 1; i < r.edges.size(); ++i)
      if (net.edge(r.edges[i - 1]).to != net.edge(r.edges[i]).from)
        throw ValidationError(prefix + "route is not connected");
    if (!r.edges.empty()) {
      r.origin = net.edge(r.edges.front()).from;
      r.destination = net.edge(r.edges.back()).to;
    }
    r.cost = *cost;
    res.assignments.push_back(
        {Trip{static_cast<TripId>(*id), static_cast<EdgeId>(*o), static_cast<EdgeId>(*d), *dep}, std::move(r)});
  }
  if (!header) throw ParseError("missing column header", line_no);
  return set;
}

RouteSet read_routes_file(const std::string& path, const RoadNetwork& net) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open routes file " + path);
  return read_routes(in, net);
}

void write_failed(std::ostream& out, const AssignmentResult& result) {
  out << "trip_id,reason\n";
  for (const auto& f : result.failed) out << f.trip.id << ',' << f.reason << '\n';
}

void write_edge_usage(std::ostream& out, const AssignmentResult& result, const RoadNetwork& net) {
  std::vector<std::uint64_t> n(net.edge_count(), 0);
  for (const auto& a : result.assignments)
    for (const auto e : a.route.edges) ++n[e];
  out << "edge_id,traversals\n";
  for (EdgeId e = 0; e < n.size(); ++e) out << e << ',' << n[e] << '\n';
}

MetricsReport compute_metrics(const AssignmentResult& result, const RoadNetwork& net, const MetricsOptions& opts,
                              std::size_t failed_trips) {
  MetricsReport rep;
  rep.algorithm = result.algorithm;
  rep.failed_trips = failed_trips;
  rep.t = opts.t;
  rep.sigma = opts.sigma;
  const auto routes = result.routes();
  rep.rc_percent = road_coverage(routes, net);
  try {
    rep.red = redundancy(routes);
    rep.red_time = time_redundancy(result, opts.t, opts.sigma);
  } catch (const UndefinedError&) {
  }
  if (opts.emission) {
    double total = 0.0;
    for (const auto& r : routes) total += emissions_of(r, net, *opts.emission, opts.profile_step);
    rep.emission_proxy_total = total;
  }
  return rep;
}

std::string metrics_json(const MetricsReport& report) {
  using nlohmann::ordered_json;
  const auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["algorithm"] = report.algorithm;
  j["RC_percent"] = report.rc_percent;
  j["RED"] = opt(report.red);
  j["RED_time"] = {{"t", report.t}, {"sigma", report.sigma}, {"value", opt(report.red_time)}};
  j["emission_proxy_total"] = opt(report.emission_proxy_total);
  j["emission_proxy_note"] = "free-flow trajectory proxy, not a microsimulation estimate";
  j["failed_trips"] = report.failed_trips;
  return j.dump(2) + "\n";
}

void write_redundancy_scatter(std::ostream& out, const AssignmentResult& result, const RoadNetwork& net,
                              const MetricsOptions& opts) {
  auto order = result.assignments;
  std::stable_sort(order.begin(), order.end(),
                   [](const Assignment& a, const Assignment& b) { return a.trip.departure < b.trip.departure; });
  out << "window_start,red,emission_proxy\n";
  const double t0 = result.window.start;
  const double tmax = std::max(t0, result.window.end - opts.t);
  for (std::size_t j = 0;; ++j) {
    const double start = t0 + static_cast<double>(j) * opts.sigma;
    if (start > tmax) break;
    std::vector<Route> batch;
    for (const auto& a : order)
      if (a.trip.departure >= start && a.trip.departure < start + opts.t && !a.route.empty()) batch.push_back(a.route);
    if (batch.empty()) continue;
    out << text::format_double(start) << ',' << text::format_double(redundancy(batch)) << ',';
    if (opts.emission) {
      double e = 0.0;
      for (const auto& r : batch) e += emissions_of(r, net, *opts.emission, opts.profile_step);
      out << text::format_double(e);
    }
    out << '\n';
  }
}

std::vector<ScatterPoint> read_scatter(std::istream& in, const std::string& x_column, const std::string& y_column) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> xi;
  std::optional<std::size_t> yi;
  std::vector<ScatterPoint> out;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto f = text::split(line, ',');
    if (!xi) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == x_column) xi = i;
        if (f[i] == y_column) yi = i;
      }
      if (!xi || !yi) throw ParseError("header lacks column " + (xi ? y_column : x_column), line_no);
      continue;
    }
    if (f.size() <= std::max(*xi, *yi)) throw ParseError("missing fields", line_no);
    const auto x = text::parse_double(f[*xi]);
    const auto y = text::parse_double(f[*yi]);
    if (!x || !y) throw ParseError("non-numeric value", line_no);
    out.push_back({*x, *y});
  }
  if (!xi) throw ParseError("missing column header", line_no);
  return out;
}

EmissionCoefficients parse_emission_coefficients(const std::string& csv) {
  const auto parts = text::split(csv, ',');
  if (parts.size() != 6) throw ValidationError("emission coefficients need six values c0..c5");
  EmissionCoefficients c;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto v = text::parse_double(parts[i]);
    if (!v) throw ValidationError("malformed emission coefficient '" + std::string(parts[i]) + "'");
    c.c[i] = *v;
  }
  return c;
}

}  // namespace ta
