#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ta/network.hpp"

namespace ta {

using TripId = std::uint32_t;

struct Trip {
  TripId id = 0;
  EdgeId origin_edge = 0;
  EdgeId destination_edge = 0;
  double departure = 0.0;  // seconds from the window start

  friend bool operator==(const Trip&, const Trip&) = default;
};

struct TimeWindow {
  double start = 0.0;
  double end = 3600.0;

  double length() const { return end - start; }
  bool contains(double t) const { return t >= start && t < end; }
};

// Trips ordered by departure, ties by trip id.
struct MobilityDemand {
  std::vector<Trip> trips;
  TimeWindow window;
};

void sort_by_departure(MobilityDemand& demand);

class ODMatrix {
 public:
  using Cell = std::pair<AreaId, AreaId>;

  void add(AreaId origin, AreaId destination, std::uint64_t n = 1);
  std::uint64_t count(AreaId origin, AreaId destination) const;
  std::uint64_t total() const { return total_; }
  // Non-zero cells in (origin, destination) order.
  const std::map<Cell, std::uint64_t>& cells() const { return counts_; }

 private:
  std::map<Cell, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct ODRecord {
  Point origin;
  Point destination;
};

struct ODTally {
  ODMatrix matrix;
  std::size_t clamped_points = 0;  // points outside the grid, snapped to border tiles
};

ODTally build_od_matrix(std::span<const ODRecord> records, const TileGrid& grid);

struct SamplingOptions {
  std::size_t trips = 0;
  TimeWindow window;
  std::uint64_t seed = 0;
  int max_retries = 1000;  // per trip
};

// Edges whose start node lies in each area, indexed by AreaId.
std::vector<std::vector<EdgeId>> edges_by_area(const RoadNetwork& net, const TileGrid& grid);

// OD cells whose origin or destination tile holds no edge start node.
struct Feasibility {
  std::size_t infeasible_cells = 0;
  std::uint64_t infeasible_records = 0;
};

Feasibility check_feasibility(const ODMatrix& od, const RoadNetwork& net, const TileGrid& grid);

// Draws cells proportionally to their counts, then an origin and a destination
// edge uniformly within the two tiles, and a uniform departure in the window.
// Throws ValidationError("infeasible OD cell ...") when a trip cannot be drawn
// within max_retries.
MobilityDemand sample_demand(const ODMatrix& od, const RoadNetwork& net, const TileGrid& grid,
                             const SamplingOptions& opts);

// Demand document: optional "# window=<start>,<end>" line, then
//   trip_id,origin_edge,destination_edge,departure_s
MobilityDemand load_demand(std::istream& in, const RoadNetwork& net);
MobilityDemand load_demand_file(const std::string& path, const RoadNetwork& net);
void write_demand(std::ostream& out, const MobilityDemand& demand);

// OD records document: header o_x,o_y,d_x,d_y then one row per trip.
std::vector<ODRecord> load_od_records(std::istream& in);
std::vector<ODRecord> load_od_records_file(const std::string& path);
void write_od_records(std::ostream& out, std::span<const ODRecord> records);

}  // namespace ta
