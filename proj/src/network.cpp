#include "ta/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "ta/errors.hpp"
#include "ta/text.hpp"

namespace ta {

namespace {

void build_csr(std::size_t node_count, const std::vector<Edge>& edges, bool outgoing,
               std::vector<std::size_t>& offsets, std::vector<EdgeId>& list) {
  offsets.assign(node_count + 1, 0);
  for (const auto& e : edges) ++offsets[(outgoing ? e.from : e.to) + 1];
  for (std::size_t i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
  list.resize(edges.size());
  auto cursor = offsets;
  // Edges are visited in id order, so each bucket ends up sorted.
  for (const auto& e : edges) list[cursor[outgoing ? e.from : e.to]++] = e.id;
}

}  // namespace

RoadNetwork::RoadNetwork(std::vector<Point> nodes, const std::vector<EdgeSpec>& edges,
                         std::vector<std::int64_t> node_labels)
    : positions_(std::move(nodes)), labels_(std::move(node_labels)) {
  if (edges.empty()) throw ValidationError("no edges");
  if (labels_.empty()) {
    labels_.resize(positions_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) labels_[i] = static_cast<std::int64_t>(i);
  } else if (labels_.size() != positions_.size()) {
    throw ValidationError("node label count does not match node count");
  }

  edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& s = edges[i];
    const auto where = "edge " + std::to_string(i);
    if (s.from >= positions_.size() || s.to >= positions_.size())
      throw ValidationError(where + ": references an undefined node");
    if (!(s.length > 0.0) || !std::isfinite(s.length))
      throw ValidationError(where + ": length must be positive");
    if (!(s.max_speed > 0.0) || !std::isfinite(s.max_speed))
      throw ValidationError(where + ": max speed must be positive");
    if (s.lanes < 1) throw ValidationError(where + ": lanes must be at least 1");
    Edge e;
    e.id = static_cast<EdgeId>(i);
    e.from = s.from;
    e.to = s.to;
    e.length = s.length;
    e.max_speed = s.max_speed;
    e.lanes = s.lanes;
    e.weight = s.length / s.max_speed;
    edges_.push_back(e);
    base_weights_.push_back(e.weight);
    total_length_ += e.length;
  }

  build_csr(positions_.size(), edges_, true, out_offsets_, out_list_);
  build_csr(positions_.size(), edges_, false, in_offsets_, in_list_);
}

std::span<const EdgeId> RoadNetwork::out_edges(NodeId n) const {
  return std::span<const EdgeId>(out_list_).subspan(out_offsets_[n], out_offsets_[n + 1] - out_offsets_[n]);
}

std::span<const EdgeId> RoadNetwork::in_edges(NodeId n) const {
  return std::span<const EdgeId>(in_list_).subspan(in_offsets_[n], in_offsets_[n + 1] - in_offsets_[n]);
}

double edge_capacity(const Edge& e) {
  constexpr double green_ratio = 0.5;
  const double mph = e.max_speed * kMphPerMetersPerSecond;
  const double lanes = static_cast<double>(e.lanes);
  if (mph <= 45.0) return 1900.0 * lanes * green_ratio;
  if (mph < 60.0) return (1200.0 + 20.0 * mph) * lanes;
  return (1700.0 + 10.0 * mph) * lanes;
}

std::vector<double> edge_capacities(const RoadNetwork& net) {
  std::vector<double> out;
  out.reserve(net.edge_count());
  for (const auto& e : net.edges()) out.push_back(edge_capacity(e));
  return out;
}

TileGrid::TileGrid(const RoadNetwork& net, double cell_size) : cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw ValidationError("cell size must be positive");
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& p = net.position(n);
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  if (net.node_count() == 0) min_x = min_y = max_x = max_y = 0.0;
  origin_ = {min_x, min_y};
  // A node on the far border belongs to the next cell, hence +1.
  nx_ = static_cast<int>(std::floor((max_x - min_x) / cell_size_)) + 1;
  ny_ = static_cast<int>(std::floor((max_y - min_y) / cell_size_)) + 1;

  node_tiles_.reserve(net.node_count());
  for (NodeId n = 0; n < net.node_count(); ++n) node_tiles_.push_back(locate(net.position(n)));
}

bool TileGrid::contains(const Point& p) const {
  const double ix = std::floor((p.x - origin_.x) / cell_size_);
  const double iy = std::floor((p.y - origin_.y) / cell_size_);
  return ix >= 0 && iy >= 0 && ix < nx_ && iy < ny_;
}

TileId TileGrid::locate(const Point& p, bool* clamped) const {
  const double fx = std::floor((p.x - origin_.x) / cell_size_);
  const double fy = std::floor((p.y - origin_.y) / cell_size_);
  const double cx = std::clamp(fx, 0.0, static_cast<double>(nx_ - 1));
  const double cy = std::clamp(fy, 0.0, static_cast<double>(ny_ - 1));
  if (clamped) *clamped = (cx != fx) || (cy != fy);
  return {static_cast<int>(cx), static_cast<int>(cy)};
}

TileGrid build_tile_grid(const RoadNetwork& net, double cell_size) { return TileGrid(net, cell_size); }

TileId tile_of_edge(const Edge& e, const TileGrid& grid, Anchor anchor) {
  return grid.tile_of_node(anchor == Anchor::start ? e.from : e.to);
}

namespace {

enum class Section { none, nodes, edges };

const std::vector<std::string_view> kNodeHeader = {"id", "x_m", "y_m"};
const std::vector<std::string_view> kEdgeHeader = {"id", "from", "to", "length_m", "maxspeed_ms", "lanes"};

}  // namespace

RoadNetwork load_network(std::istream& in) {
  std::vector<Point> positions;
  std::vector<std::int64_t> labels;
  std::unordered_map<std::int64_t, NodeId> index;
  std::vector<EdgeSpec> edges;

  Section section = Section::none;
  bool expect_header = false;
  bool saw_nodes = false;
  bool saw_edges = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[nodes]") {
      if (saw_nodes) throw ParseError("duplicate [nodes] section", line_no);
      section = Section::nodes;
      saw_nodes = expect_header = true;
      continue;
    }
    if (line == "[edges]") {
      if (saw_edges) throw ParseError("duplicate [edges] section", line_no);
      section = Section::edges;
      saw_edges = expect_header = true;
      continue;
    }
    if (section == Section::none) throw ParseError("record outside of a section", line_no);

    const auto fields = text::split(line, ',');
    const auto& header = section == Section::nodes ? kNodeHeader : kEdgeHeader;
    if (expect_header) {
      if (fields != header) throw ParseError("unexpected column header", line_no);
      expect_header = false;
      continue;
    }
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);

    if (section == Section::nodes) {
      const auto id = text::parse_int(fields[0]);
      const auto x = text::parse_double(fields[1]);
      const auto y = text::parse_double(fields[2]);
      if (!id || !x || !y) throw ParseError("malformed node record", line_no);
      if (!index.emplace(*id, static_cast<NodeId>(positions.size())).second)
        throw ValidationError("line " + std::to_string(line_no) + ": duplicate node id " + std::to_string(*id));
      positions.push_back({*x, *y});
      labels.push_back(*id);
    } else {
      const auto id = text::parse_int(fields[0]);
      const auto from = text::parse_int(fields[1]);
      const auto to = text::parse_int(fields[2]);
      const auto length = text::parse_double(fields[3]);
      const auto speed = text::parse_double(fields[4]);
      const auto lanes = text::parse_int(fields[5]);
      if (!id || !from || !to || !length || !speed || !lanes) throw ParseError("malformed edge record", line_no);
      const auto prefix = "line " + std::to_string(line_no) + ": ";
      if (*id != static_cast<std::int64_t>(edges.size()))
        throw ValidationError(prefix + "edge ids must be dense and in document order");
      const auto f = index.find(*from);
      const auto t = index.find(*to);
      if (f == index.end() || t == index.end()) throw ValidationError(prefix + "edge references an undefined node");
      if (*lanes < 1 || *lanes > 1000) throw ValidationError(prefix + "lanes must be at least 1");
      if (!(*length > 0.0)) throw ValidationError(prefix + "length must be positive");
      if (!(*speed > 0.0)) throw ValidationError(prefix + "max speed must be positive");
      edges.push_back({f->second, t->second, *length, *speed, static_cast<int>(*lanes)});
    }
  }
  if (expect_header) throw ParseError("section without column header", line_no);
  return RoadNetwork(std::move(positions), edges, std::move(labels));
}

RoadNetwork load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network file " + path);
  return load_network(in);
}

void write_network(std::ostream& out, const RoadNetwork& net) {
  out << "[nodes]\nid,x_m,y_m\n";
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& p = net.position(n);
    out << net.node_label(n) << ',' << text::format_double(p.x) << ',' << text::format_double(p.y) << '\n';
  }
  out << "[edges]\nid,from,to,length_m,maxspeed_ms,lanes\n";
  for (const auto& e : net.edges()) {
    out << e.id << ',' << net.node_label(e.from) << ',' << net.node_label(e.to) << ','
        << text::format_double(e.length) << ',' << text::format_double(e.max_speed) << ',' << e.lanes << '\n';
  }
}

}  // namespace ta
