#pragma once

#include <cstdint>
#include <vector>

#include "ta/demand.hpp"
#include "ta/network.hpp"

namespace ta {

// Manhattan-style test network: cols x rows intersections, two directed edges
// between 4-neighbours. Every `arterial_every`-th row and column is a faster
// multi-lane road; local speeds are drawn from a small set per street.
struct GridSpec {
  int cols = 50;
  int rows = 50;
  double spacing = 100.0;  // m
  int arterial_every = 10;
  std::uint64_t seed = 1;
};

RoadNetwork make_grid_network(const GridSpec& spec);

// Synthetic OD records with hotspots: a share of the records scatters
// normally around one of a few (origin centre, destination centre) pairs,
// the rest is uniform over the network bounding box.
struct ClusterSpec {
  std::size_t records = 1000;
  int hotspots = 4;
  double hotspot_share = 0.6;
  double radius = 300.0;  // m, standard deviation around a centre
  std::uint64_t seed = 1;
};

std::vector<ODRecord> make_clustered_od_records(const RoadNetwork& net, const ClusterSpec& spec);

}  // namespace ta
