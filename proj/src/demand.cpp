#include "ta/demand.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include "ta/errors.hpp"
#include "ta/text.hpp"

namespace ta {

void sort_by_departure(MobilityDemand& demand) {
  std::sort(demand.trips.begin(), demand.trips.end(), [](const Trip& a, const Trip& b) {
    return a.departure != b.departure ? a.departure < b.departure : a.id < b.id;
  });
}

void ODMatrix::add(AreaId origin, AreaId destination, std::uint64_t n) {
  if (n == 0) return;
  counts_[{origin, destination}] += n;
  total_ += n;
}

std::uint64_t ODMatrix::count(AreaId origin, AreaId destination) const {
  const auto it = counts_.find({origin, destination});
  return it == counts_.end() ? 0 : it->second;
}

ODTally build_od_matrix(std::span<const ODRecord> records, const TileGrid& grid) {
  ODTally out;
  for (const auto& r : records) {
    bool clamped_o = false;
    bool clamped_d = false;
    const auto o = grid.locate(r.origin, &clamped_o);
    const auto d = grid.locate(r.destination, &clamped_d);
    out.clamped_points += static_cast<std::size_t>(clamped_o) + static_cast<std::size_t>(clamped_d);
    out.matrix.add(grid.area(o), grid.area(d));
  }
  return out;
}

std::vector<std::vector<EdgeId>> edges_by_area(const RoadNetwork& net, const TileGrid& grid) {
  std::vector<std::vector<EdgeId>> out(grid.tile_count());
  for (const auto& e : net.edges()) out[grid.area(tile_of_edge(e, grid, Anchor::start))].push_back(e.id);
  return out;
}

MobilityDemand sample_demand(const ODMatrix& od, const RoadNetwork& net, const TileGrid& grid,
                             const SamplingOptions& opts) {
  if (opts.trips == 0) throw ValidationError("number of trips must be at least 1");
  if (od.total() == 0) throw ValidationError("OD matrix is empty");
  if (!(opts.window.end > opts.window.start)) throw ValidationError("empty departure window");

  const auto by_area = edges_by_area(net, grid);
  std::vector<ODMatrix::Cell> cells;
  std::vector<double> weights;
  for (const auto& [cell, n] : od.cells()) {
    if (cell.first >= by_area.size() || cell.second >= by_area.size())
      throw ValidationError("OD matrix references a tile outside the grid");
    cells.push_back(cell);
    weights.push_back(static_cast<double>(n));
  }

  std::mt19937_64 rng(opts.seed);
  std::discrete_distribution<std::size_t> pick_cell(weights.begin(), weights.end());
  std::uniform_real_distribution<double> departure(opts.window.start, opts.window.end);

  MobilityDemand demand;
  demand.window = opts.window;
  demand.trips.reserve(opts.trips);
  for (std::size_t i = 0; i < opts.trips; ++i) {
    bool drawn = false;
    ODMatrix::Cell last{};
    for (int attempt = 0; attempt <= opts.max_retries && !drawn; ++attempt) {
      last = cells[pick_cell(rng)];
      const auto& from = by_area[last.first];
      const auto& to = by_area[last.second];
      if (from.empty() || to.empty()) continue;
      const EdgeId o = from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
      const EdgeId d = to[std::uniform_int_distribution<std::size_t>(0, to.size() - 1)(rng)];
      // Degenerate trips (same edge, or nothing to route) are redrawn.
      if (o == d || net.edge(o).from == net.edge(d).to) continue;
      demand.trips.push_back({0, o, d, 0.0});
      drawn = true;
    }
    if (!drawn) {
      const auto ot = grid.tile(last.first);
      const auto dt = grid.tile(last.second);
      throw ValidationError("infeasible OD cell (" + std::to_string(ot.ix) + "," + std::to_string(ot.iy) + ")->(" +
                            std::to_string(dt.ix) + "," + std::to_string(dt.iy) + ") after " +
                            std::to_string(opts.max_retries) + " retries");
    }
  }
  for (auto& t : demand.trips) t.departure = departure(rng);
  std::stable_sort(demand.trips.begin(), demand.trips.end(),
                   [](const Trip& a, const Trip& b) { return a.departure < b.departure; });
  for (std::size_t i = 0; i < demand.trips.size(); ++i) demand.trips[i].id = static_cast<TripId>(i);
  return demand;
}

Feasibility check_feasibility(const ODMatrix& od, const RoadNetwork& net, const TileGrid& grid) {
  const auto by_area = edges_by_area(net, grid);
  Feasibility f;
  for (const auto& [cell, n] : od.cells()) {
    const bool ok = cell.first < by_area.size() && cell.second < by_area.size() && !by_area[cell.first].empty() &&
                    !by_area[cell.second].empty();
    if (ok) continue;
    ++f.infeasible_cells;
    f.infeasible_records += n;
  }
  return f;
}

namespace {

const std::vector<std::string_view> kDemandHeader = {"trip_id", "origin_edge", "destination_edge", "departure_s"};
const std::vector<std::string_view> kOdHeader = {"o_x", "o_y", "d_x", "d_y"};

}  // namespace

MobilityDemand load_demand(std::istream& in, const RoadNetwork& net) {
  MobilityDemand demand;
  std::set<TripId> ids;
  bool header = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "window=";
      const auto body = text::trim(line.substr(1));
      if (body.substr(0, key.size()) == key) {
        const auto parts = text::split(body.substr(key.size()), ',');
        const auto start = parts.size() == 2 ? text::parse_double(parts[0]) : std::nullopt;
        const auto end = parts.size() == 2 ? text::parse_double(parts[1]) : std::nullopt;
        if (!start || !end || !(*end > *start)) throw ParseError("malformed window", line_no);
        demand.window = {*start, *end};
      }
      continue;
    }
    const auto fields = text::split(line, ',');
    if (!header) {
      if (fields != kDemandHeader) throw ParseError("unexpected column header", line_no);
      header = true;
      continue;
    }
    if (fields.size() != kDemandHeader.size()) throw ParseError("expected 4 fields", line_no);
    const auto id = text::parse_int(fields[0]);
    const auto o = text::parse_int(fields[1]);
    const auto d = text::parse_int(fields[2]);
    const auto t = text::parse_double(fields[3]);
    if (!id || !o || !d || !t || *id < 0 || *o < 0 || *d < 0) throw ParseError("malformed trip record", line_no);
    const auto prefix = "line " + std::to_string(line_no) + ": ";
    if (*o >= static_cast<std::int64_t>(net.edge_count()) || *d >= static_cast<std::int64_t>(net.edge_count()))
      throw ValidationError(prefix + "trip references an unknown edge");
    if (*o == *d) throw ValidationError(prefix + "origin and destination edge coincide");
    if (!ids.insert(static_cast<TripId>(*id)).second) throw ValidationError(prefix + "duplicate trip id");
    demand.trips.push_back({static_cast<TripId>(*id), static_cast<EdgeId>(*o), static_cast<EdgeId>(*d), *t});
  }
  if (!header) throw ParseError("missing column header", line_no);
  for (const auto& t : demand.trips)
    if (!demand.window.contains(t.departure))
      throw ValidationError("trip " + std::to_string(t.id) + " departs outside the demand window");
  sort_by_departure(demand);
  return demand;
}

MobilityDemand load_demand_file(const std::string& path, const RoadNetwork& net) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open demand file " + path);
  return load_demand(in, net);
}

void write_demand(std::ostream& out, const MobilityDemand& demand) {
  out << "# window=" << text::format_double(demand.window.start) << ',' << text::format_double(demand.window.end)
      << '\n';
  out << "trip_id,origin_edge,destination_edge,departure_s\n";
  for (const auto& t : demand.trips)
    out << t.id << ',' << t.origin_edge << ',' << t.destination_edge << ',' << text::format_double(t.departure) << '\n';
}

std::vector<ODRecord> load_od_records(std::istream& in) {
  std::vector<ODRecord> out;
  bool header = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split(line, ',');
    if (!header) {
      if (fields != kOdHeader) throw ParseError("unexpected column header", line_no);
      header = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
    double v[4];
    for (int i = 0; i < 4; ++i) {
      const auto x = text::parse_double(fields[i]);
      if (!x) throw ParseError("malformed coordinate", line_no);
      v[i] = *x;
    }
    out.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  if (!header) throw ParseError("missing column header", line_no);
  return out;
}

std::vector<ODRecord> load_od_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open OD records file " + path);
  return load_od_records(in);
}

void write_od_records(std::ostream& out, std::span<const ODRecord> records) {
  out << "o_x,o_y,d_x,d_y\n";
  for (const auto& r : records)
    out << text::format_double(r.origin.x) << ',' << text::format_double(r.origin.y) << ','
        << text::format_double(r.destination.x) << ',' << text::format_double(r.destination.y) << '\n';
}

}  // namespace ta
