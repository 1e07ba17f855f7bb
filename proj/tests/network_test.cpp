#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "ta/errors.hpp"
#include "ta/network.hpp"
#include "ta/synthetic.hpp"

namespace ta {
namespace {

constexpr const char* kThreeEdges = R"(# toy network
[nodes]
id,x_m,y_m
10,0,0
20,100,0
30,100,50

[edges]
id,from,to,length_m,maxspeed_ms,lanes
0,10,20,100,10,1
1,20,30,50,12.5,2
2,30,10,111.8,8,1
)";

RoadNetwork parse(const std::string& doc) {
  std::istringstream in(doc);
  return load_network(in);
}

TEST(LoadNetwork, ThreeEdgeDocument) {
  const auto net = parse(kThreeEdges);
  ASSERT_EQ(net.edge_count(), 3u);
  ASSERT_EQ(net.node_count(), 3u);
  for (EdgeId e = 0; e < 3; ++e) EXPECT_EQ(net.edge(e).id, e);
  EXPECT_EQ(net.node_label(net.edge(1).from), 20);
  EXPECT_EQ(net.node_label(net.edge(1).to), 30);
  EXPECT_EQ(net.edge(1).lanes, 2);
  EXPECT_DOUBLE_EQ(net.total_length(), 261.8);
}

TEST(LoadNetwork, FreeFlowWeightIsLengthOverSpeed) {
  const auto net = parse(kThreeEdges);
  EXPECT_EQ(net.edge(0).weight, 10.0);
  EXPECT_EQ(net.edge(1).weight, 4.0);
  EXPECT_EQ(net.base_weights()[2], 111.8 / 8.0);
}

TEST(LoadNetwork, EmptyEdgeListIsRejected) {
  try {
    parse("[nodes]\nid,x_m,y_m\n1,0,0\n[edges]\nid,from,to,length_m,maxspeed_ms,lanes\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "no edges");
  }
}

TEST(LoadNetwork, MalformedRecordReportsLine) {
  std::string doc = kThreeEdges;
  doc.replace(doc.find("1,20,30,50,12.5,2"), 17, "1,20,30,fifty,12.5,2");
  try {
    parse(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 11u);
  }
}

TEST(LoadNetwork, WrongFieldCountReportsLine) {
  try {
    parse("[nodes]\nid,x_m,y_m\n1,0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadNetwork, DanglingNodeIsValidationError) {
  std::string doc = kThreeEdges;
  doc.replace(doc.find("2,30,10"), 7, "2,30,99");
  EXPECT_THROW(parse(doc), ValidationError);
}

TEST(LoadNetwork, NonPositiveLengthOrSpeedIsValidationError) {
  std::string zero_len = kThreeEdges;
  zero_len.replace(zero_len.find("0,10,20,100,10,1"), 16, "0,10,20,0,10,1");
  EXPECT_THROW(parse(zero_len), ValidationError);
  std::string neg_speed = kThreeEdges;
  neg_speed.replace(neg_speed.find("0,10,20,100,10,1"), 16, "0,10,20,100,-3,1");
  EXPECT_THROW(parse(neg_speed), ValidationError);
}

TEST(LoadNetwork, EdgeIdsMustBeDense) {
  std::string doc = kThreeEdges;
  doc.replace(doc.find("2,30,10"), 1, "7");
  EXPECT_THROW(parse(doc), ValidationError);
}

TEST(LoadNetwork, WriteThenLoadPreservesNetwork) {
  const auto net = make_grid_network({.cols = 4, .rows = 3, .spacing = 120.0, .arterial_every = 2, .seed = 9});
  std::stringstream buf;
  write_network(buf, net);
  const auto again = load_network(buf);
  ASSERT_EQ(again.edge_count(), net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    EXPECT_EQ(again.edge(e).from, net.edge(e).from);
    EXPECT_EQ(again.edge(e).to, net.edge(e).to);
    EXPECT_EQ(again.edge(e).weight, net.edge(e).weight);
    EXPECT_EQ(again.edge(e).lanes, net.edge(e).lanes);
  }
}

TEST(LoadNetwork, WeightScalesLinearlyWithLength) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 500.0);
  for (int i = 0; i < 200; ++i) {
    const double len = u(rng);
    const double speed = u(rng) / 10.0;
    RoadNetwork one({{0, 0}, {1, 0}}, {{0, 1, len, speed, 1}});
    RoadNetwork two({{0, 0}, {1, 0}}, {{0, 1, 2.0 * len, speed, 1}});
    EXPECT_GT(one.edge(0).weight, 0.0);
    EXPECT_NEAR(two.edge(0).weight, 2.0 * one.edge(0).weight, 1e-12 * two.edge(0).weight);
  }
}

Edge edge_with(double mph, int lanes) {
  Edge e;
  e.max_speed = mph / kMphPerMetersPerSecond;
  e.lanes = lanes;
  e.length = 1.0;
  return e;
}

TEST(EdgeCapacity, ThreeBranches) {
  EXPECT_NEAR(edge_capacity(edge_with(30, 2)), 1900.0, 1e-9);
  EXPECT_NEAR(edge_capacity(edge_with(50, 1)), 2200.0, 1e-9);
  EXPECT_NEAR(edge_capacity(edge_with(65, 3)), 7050.0, 1e-9);
}

TEST(EdgeCapacity, BranchBoundaries) {
  // 45 mph belongs to the low branch, 60 mph to the high one.
  Edge at45 = edge_with(45, 1);
  at45.max_speed = 45.0 / kMphPerMetersPerSecond * (1.0 - 1e-12);
  EXPECT_DOUBLE_EQ(edge_capacity(at45), 950.0);
  Edge above45 = edge_with(45.5, 1);
  EXPECT_NEAR(edge_capacity(above45), 1200.0 + 20.0 * 45.5, 1e-9);
  Edge at60 = edge_with(60, 1);
  at60.max_speed = 60.0 / kMphPerMetersPerSecond * (1.0 + 1e-12);
  EXPECT_NEAR(edge_capacity(at60), 2300.0, 1e-6);
  Edge below60 = edge_with(59.9, 1);
  EXPECT_NEAR(edge_capacity(below60), 1200.0 + 20.0 * 59.9, 1e-9);
}

TEST(EdgeCapacity, MonotoneInLanes) {
  for (double mph : {20.0, 44.0, 50.0, 59.0, 60.5, 80.0}) {
    double prev = 0.0;
    for (int lanes = 1; lanes <= 6; ++lanes) {
      const double c = edge_capacity(edge_with(mph, lanes));
      EXPECT_GE(c, prev);
      EXPECT_GT(c, 0.0);
      prev = c;
    }
  }
}

RoadNetwork box_network(std::vector<Point> pts) {
  std::vector<EdgeSpec> edges;
  for (NodeId i = 0; i + 1 < pts.size(); ++i) edges.push_back({i, i + 1, 1.0, 1.0, 1});
  if (edges.empty()) edges.push_back({0, 0, 1.0, 1.0, 1});
  return RoadNetwork(std::move(pts), edges);
}

TEST(TileGrid, OriginNodeIsTileZero) {
  const auto net = box_network({{500, 700}, {2500, 1900}});
  const auto grid = build_tile_grid(net, 1000.0);
  EXPECT_EQ(grid.tile_of_node(0), (TileId{0, 0}));
}

TEST(TileGrid, BoundaryBelongsToHigherTile) {
  const auto net = box_network({{0, 0}, {999.9, 1000.0}, {3000, 3000}});
  const auto grid = build_tile_grid(net, 1000.0);
  EXPECT_EQ(grid.tile_of_node(1), (TileId{0, 1}));
}

TEST(TileGrid, BoundingBoxDimensions) {
  const auto net = box_network({{0, 0}, {2500, 1500}});
  const auto grid = build_tile_grid(net, 1000.0);
  EXPECT_EQ(grid.nx(), 3);
  EXPECT_EQ(grid.ny(), 2);
  EXPECT_EQ(grid.tile_count(), 6u);
}

TEST(TileGrid, CoincidentNodesGiveSingleTile) {
  const auto net = box_network({{42, 42}, {42, 42}});
  const auto grid = build_tile_grid(net, 1000.0);
  EXPECT_EQ(grid.tile_count(), 1u);
  EXPECT_EQ(grid.tile_of_node(1), (TileId{0, 0}));
}

TEST(TileGrid, RejectsNonPositiveCell) {
  const auto net = box_network({{0, 0}, {1, 1}});
  EXPECT_THROW(build_tile_grid(net, 0.0), ValidationError);
}

TEST(TileGrid, OutsidePointsAreClamped) {
  const auto net = box_network({{0, 0}, {2500, 1500}});
  const auto grid = build_tile_grid(net, 1000.0);
  bool clamped = false;
  EXPECT_EQ(grid.locate({-10, 700}, &clamped), (TileId{0, 0}));
  EXPECT_TRUE(clamped);
  EXPECT_EQ(grid.locate({9000, 9000}, &clamped), (TileId{2, 1}));
  EXPECT_TRUE(clamped);
  EXPECT_EQ(grid.locate({1200, 300}, &clamped), (TileId{1, 0}));
  EXPECT_FALSE(clamped);
}

TEST(TileGrid, EveryNodeGetsATileInsideTheGrid) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-5000.0, 5000.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 50; ++i) pts.push_back({coord(rng), coord(rng)});
    const auto net = box_network(pts);
    const auto grid = build_tile_grid(net, 750.0);
    for (NodeId n = 0; n < net.node_count(); ++n) {
      const auto t = grid.tile_of_node(n);
      EXPECT_GE(t.ix, 0);
      EXPECT_GE(t.iy, 0);
      EXPECT_LT(t.ix, grid.nx());
      EXPECT_LT(t.iy, grid.ny());
      EXPECT_EQ(grid.tile(grid.area(t)), t);
      EXPECT_TRUE(grid.contains(net.position(n)));
    }
  }
}

TEST(TileOfEdge, Anchors) {
  const auto net = box_network({{1500, 2500}, {1600, 2600}, {2100, 2700}, {0, 0}});
  const auto grid = build_tile_grid(net, 1000.0);
  // from-node at offset (1500, 2500) -> tile (1, 2)
  EXPECT_EQ(tile_of_edge(net.edge(0), grid, Anchor::start), (TileId{1, 2}));
  // edge 1 spans tiles (1,2) -> (2,2)
  EXPECT_EQ(tile_of_edge(net.edge(1), grid, Anchor::end), (TileId{2, 2}));
  EXPECT_EQ(tile_of_edge(net.edge(0), grid, Anchor::start), tile_of_edge(net.edge(0), grid, Anchor::end));
}

TEST(SyntheticGrid, ShapeAndBidirectionality) {
  const auto net = make_grid_network({.cols = 5, .rows = 4, .spacing = 100.0, .arterial_every = 2, .seed = 1});
  EXPECT_EQ(net.node_count(), 20u);
  EXPECT_EQ(net.edge_count(), 2u * (4 * 4 + 5 * 3));
  for (EdgeId e = 0; e < net.edge_count(); e += 2) {
    EXPECT_EQ(net.edge(e).from, net.edge(e + 1).to);
    EXPECT_EQ(net.edge(e).weight, net.edge(e + 1).weight);
  }
}

}  // namespace
}  // namespace ta
