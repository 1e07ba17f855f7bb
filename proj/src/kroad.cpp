#include "ta/kroad.hpp"

#include <algorithm>
#include <ostream>

#include "ta/errors.hpp"

namespace ta {

std::vector<AreaId> major_driver_set(const AreaFlows& flows, double threshold) {
  std::vector<std::pair<AreaId, std::uint64_t>> ranked;
  std::uint64_t total = 0;
  for (const auto& [area, n] : flows) {
    if (n == 0) continue;
    ranked.emplace_back(area, n);
    total += n;
  }
  if (total == 0) return {};
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second > b.second : a.first < b.first;
            });
  std::vector<AreaId> out;
  std::uint64_t cumulative = 0;
  for (const auto& [area, n] : ranked) {
    out.push_back(area);
    cumulative += n;
    if (static_cast<double>(cumulative) / static_cast<double>(total) >= threshold) break;
  }
  return out;
}

void FlowTally::add(const Route& route, AreaId origin_area, AreaId destination_area) {
  for (const auto e : route.edges) {
    ++by_source_[e][origin_area];
    ++by_end_[e][destination_area];
  }
}

void FlowTally::merge(const FlowTally& other) {
  for (std::size_t e = 0; e < by_source_.size(); ++e) {
    for (const auto& [a, n] : other.by_source_[e]) by_source_[e][a] += n;
    for (const auto& [a, n] : other.by_end_[e]) by_end_[e][a] += n;
  }
}

UsageNetwork usage_from_tally(const FlowTally& tally, double threshold) {
  UsageNetwork usage;
  usage.source_links.resize(tally.edge_count());
  usage.end_links.resize(tally.edge_count());
  for (EdgeId e = 0; e < tally.edge_count(); ++e) {
    usage.source_links[e] = major_driver_set(tally.source_flows(e), threshold);
    usage.end_links[e] = major_driver_set(tally.end_flows(e), threshold);
  }
  return usage;
}

AreaId trip_origin_area(const Trip& trip, const RoadNetwork& net, const TileGrid& grid) {
  return grid.area(tile_of_edge(net.edge(trip.origin_edge), grid, Anchor::start));
}

AreaId trip_destination_area(const Trip& trip, const RoadNetwork& net, const TileGrid& grid) {
  return grid.area(tile_of_edge(net.edge(trip.destination_edge), grid, Anchor::start));
}

NodeId trip_origin_node(const Trip& trip, const RoadNetwork& net) { return net.edge(trip.origin_edge).from; }

NodeId trip_destination_node(const Trip& trip, const RoadNetwork& net) { return net.edge(trip.destination_edge).to; }

UsageNetwork estimate_kroad(const RoadNetwork& net, const MobilityDemand& demand, const TileGrid& grid) {
  if (demand.trips.empty()) throw ValidationError("demand is empty");
  const WeightLayer free_flow(net);
  FlowTally tally(net.edge_count());
  std::size_t skipped = 0;
  for (const auto& trip : demand.trips) {
    try {
      const auto route = fastest_path(free_flow, trip_origin_node(trip, net), trip_destination_node(trip, net));
      tally.add(route, trip_origin_area(trip, net, grid), trip_destination_area(trip, net, grid));
    } catch (const NoPathError&) {
      ++skipped;
    }
  }
  auto usage = usage_from_tally(tally);
  usage.skipped_trips = skipped;
  return usage;
}

namespace {

template <typename K>
double length_weighted(const Route& r, const RoadNetwork& net, K k) {
  if (r.edges.empty()) throw UndefinedError("undefined on empty route");
  double num = 0.0;
  double den = 0.0;
  for (const auto e : r.edges) {
    const double l = net.edge(e).length;
    num += k(e) * l;
    den += l;
  }
  return num / den;
}

}  // namespace

double length_weighted_mean(const Route& r, std::span<const double> per_edge, const RoadNetwork& net) {
  return length_weighted(r, net, [&](EdgeId e) { return per_edge[e]; });
}

double kroute_source(const Route& r, const UsageNetwork& usage, const RoadNetwork& net) {
  return length_weighted(r, net, [&](EdgeId e) { return usage.k_source(e); });
}

double kroute_end(const Route& r, const UsageNetwork& usage, const RoadNetwork& net) {
  return length_weighted(r, net, [&](EdgeId e) { return usage.k_end(e); });
}

void write_usage(std::ostream& out, const UsageNetwork& usage) {
  out << "edge_id,k_source,k_end\n";
  for (EdgeId e = 0; e < usage.source_links.size(); ++e)
    out << e << ',' << usage.source_links[e].size() << ',' << usage.end_links[e].size() << '\n';
}

}  // namespace ta
