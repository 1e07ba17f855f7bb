#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ta {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Planar, pre-projected coordinates in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  EdgeId id = 0;
  NodeId from = 0;
  NodeId to = 0;
  double length = 0.0;     // m
  double max_speed = 0.0;  // m/s
  int lanes = 1;
  double weight = 0.0;     // free-flow travel time, s
};

// Input record for an edge; `weight` is derived on construction.
struct EdgeSpec {
  NodeId from = 0;
  NodeId to = 0;
  double length = 0.0;
  double max_speed = 0.0;
  int lanes = 1;
};

// Directed road graph. Immutable after construction; penalized weights live
// in WeightLayer overlays, never here.
class RoadNetwork {
 public:
  // Node labels are the ids used by external documents; they default to the
  // dense index when empty. Throws ValidationError on any broken invariant.
  RoadNetwork(std::vector<Point> nodes, const std::vector<EdgeSpec>& edges,
              std::vector<std::int64_t> node_labels = {});

  std::size_t node_count() const { return positions_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  const Point& position(NodeId n) const { return positions_[n]; }
  std::int64_t node_label(NodeId n) const { return labels_[n]; }

  std::span<const EdgeId> out_edges(NodeId n) const;
  std::span<const EdgeId> in_edges(NodeId n) const;

  std::span<const double> base_weights() const { return base_weights_; }
  double total_length() const { return total_length_; }

 private:
  std::vector<Point> positions_;
  std::vector<std::int64_t> labels_;
  std::vector<Edge> edges_;
  std::vector<double> base_weights_;
  // CSR adjacency, edge ids sorted ascending within each node.
  std::vector<std::size_t> out_offsets_;
  std::vector<EdgeId> out_list_;
  std::vector<std::size_t> in_offsets_;
  std::vector<EdgeId> in_list_;
  double total_length_ = 0.0;
};

inline constexpr double kMphPerMetersPerSecond = 2.236936;

// Hourly capacity (veh/h) from the HCM 2000 piecewise rule; speed limit is
// evaluated in mph, green-time ratio fixed at 0.5.
double edge_capacity(const Edge& e);
std::vector<double> edge_capacities(const RoadNetwork& net);

// Square tile index. ix counts cells along x, iy along y.
struct TileId {
  int ix = 0;
  int iy = 0;
  auto operator<=>(const TileId&) const = default;
};

using AreaId = std::size_t;

class TileGrid {
 public:
  TileGrid(const RoadNetwork& net, double cell_size = 1000.0);

  double cell_size() const { return cell_size_; }
  const Point& origin() const { return origin_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t tile_count() const { return static_cast<std::size_t>(nx_) * ny_; }

  bool contains(const Point& p) const;
  // Tile containing p; points outside the box are clamped onto the border
  // tiles and `clamped` (when given) is set.
  TileId locate(const Point& p, bool* clamped = nullptr) const;
  TileId tile_of_node(NodeId n) const { return node_tiles_[n]; }

  AreaId area(const TileId& t) const {
    return static_cast<AreaId>(t.iy) * static_cast<AreaId>(nx_) + static_cast<AreaId>(t.ix);
  }
  TileId tile(AreaId a) const {
    return {static_cast<int>(a % static_cast<AreaId>(nx_)), static_cast<int>(a / static_cast<AreaId>(nx_))};
  }

 private:
  double cell_size_;
  Point origin_;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<TileId> node_tiles_;
};

TileGrid build_tile_grid(const RoadNetwork& net, double cell_size = 1000.0);

enum class Anchor { start, end };

TileId tile_of_edge(const Edge& e, const TileGrid& grid, Anchor anchor);

// Network document:
//
//   [nodes]
//   id,x_m,y_m
//   ...
//   [edges]
//   id,from,to,length_m,maxspeed_ms,lanes
//   ...
//
// '#' starts a comment line. Edge ids must be 0..|E|-1 in document order.
RoadNetwork load_network(std::istream& in);
RoadNetwork load_network_file(const std::string& path);
void write_network(std::ostream& out, const RoadNetwork& net);

}  // namespace ta
