#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "ta/errors.hpp"
#include "ta/report.hpp"

namespace ta {
namespace {

using testing::network_from_arcs;

// Chain 0 -> 1 -> 2 -> 3 plus a spur 1 -> 4.
RoadNetwork small() { return network_from_arcs(5, {{0, 1, 10}, {1, 2, 20}, {2, 3, 30}, {1, 4, 40}}); }

AssignmentResult sample_result() {
  AssignmentResult r;
  r.algorithm = "metis";
  r.window = {0, 3600};
  r.config = {{"p", "0.025"}, {"s", "2.25"}};
  r.assignments = {{Trip{0, 0, 2, 1.5}, Route{{0, 1, 2}, 0, 3, 60.25}},
                   {Trip{1, 0, 3, 30}, Route{{0, 3}, 0, 4, 50}},
                   {Trip{2, 1, 2, 400}, Route{{1, 2}, 1, 3, 50}}};
  r.failed = {{Trip{3, 2, 0, 45}, "no_path"}};
  return r;
}

TEST(RouteExport, RoundTripIsByteIdentical) {
  const auto net = small();
  std::ostringstream first;
  write_routes(first, sample_result());
  std::istringstream in(first.str());
  const auto set = read_routes(in, net);
  EXPECT_EQ(set.failed_trips, 1u);
  EXPECT_EQ(set.result.algorithm, "metis");
  EXPECT_EQ(set.result.window.end, 3600.0);
  ASSERT_EQ(set.result.assignments.size(), 3u);
  EXPECT_EQ(set.result.assignments[0].route.edges, (std::vector<EdgeId>{0, 1, 2}));
  EXPECT_EQ(set.result.assignments[0].route.destination, 3u);
  EXPECT_EQ(set.result.assignments[1].trip.departure, 30.0);

  auto again = set.result;
  again.failed.resize(set.failed_trips, FailedTrip{});
  std::ostringstream second;
  write_routes(second, again);
  EXPECT_EQ(first.str(), second.str());
}

TEST(RouteExport, Layout) {
  std::ostringstream out;
  write_routes(out, sample_result());
  const auto s = out.str();
  EXPECT_EQ(s.rfind("# algorithm=metis\n# window=0,3600\n# p=0.025\n# s=2.25\n# failed_trips=1\n", 0), 0u);
  EXPECT_NE(s.find("\n0,metis,0,2,1.5,60.25,0 1 2\n"), std::string::npos);
}

TEST(RouteExport, RejectsBadRoutes) {
  const auto net = small();
  const std::string head = "trip_id,algorithm,origin_edge,destination_edge,departure_s,cost_s,edges\n";
  std::istringstream unknown(head + "0,aon,0,1,0,1,0 9\n");
  EXPECT_THROW(read_routes(unknown, net), ValidationError);
  std::istringstream broken(head + "0,aon,0,1,0,1,0 2\n");
  EXPECT_THROW(read_routes(broken, net), ValidationError);
  std::istringstream garbled(head + "0,aon,0,1,zero,1,0 1\n");
  try {
    read_routes(garbled, net);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream no_header("0,aon,0,1,0,1,0 1\n");
  EXPECT_THROW(read_routes(no_header, net), ParseError);
}

TEST(FailedExport, OneRowPerTrip) {
  std::ostringstream out;
  write_failed(out, sample_result());
  EXPECT_EQ(out.str(), "trip_id,reason\n3,no_path\n");
}

TEST(EdgeUsage, CountsTraversals) {
  std::ostringstream out;
  write_edge_usage(out, sample_result(), small());
  EXPECT_EQ(out.str(), "edge_id,traversals\n0,2\n1,2\n2,2\n3,1\n");
}

TEST(MetricsReport, KeysAndTypes) {
  const auto net = small();
  MetricsOptions opts;
  const auto rep = compute_metrics(sample_result(), net, opts, 1);
  const auto j = nlohmann::json::parse(metrics_json(rep));
  EXPECT_EQ(j.at("algorithm"), "metis");
  EXPECT_TRUE(j.at("RC_percent").is_number());
  EXPECT_EQ(j.at("RC_percent").get<double>(), 100.0);
  EXPECT_DOUBLE_EQ(j.at("RED").get<double>(), 7.0 / 4.0);
  EXPECT_EQ(j.at("RED_time").at("t").get<double>(), 300.0);
  EXPECT_EQ(j.at("RED_time").at("sigma").get<double>(), 60.0);
  EXPECT_TRUE(j.at("RED_time").at("value").is_number());
  EXPECT_TRUE(j.at("emission_proxy_total").is_null());
  EXPECT_EQ(j.at("failed_trips").get<int>(), 1);

  opts.emission = EmissionCoefficients{{1, 0, 0, 0, 0, 0}};
  const auto with = nlohmann::json::parse(metrics_json(compute_metrics(sample_result(), net, opts, 1)));
  // c0 only: the proxy is the total synthesized driving time.
  EXPECT_DOUBLE_EQ(with.at("emission_proxy_total").get<double>(), 60.0 + 50.0 + 50.0);
}

TEST(MetricsReport, DisjointRoutesGiveUnitRedundancy) {
  const auto net = small();
  AssignmentResult r;
  r.algorithm = "aon";
  r.assignments = {{Trip{0, 0, 0, 0}, Route{{0}, 0, 1, 10}}, {Trip{1, 2, 2, 5}, Route{{2}, 2, 3, 30}}};
  const auto rep = compute_metrics(r, net, {}, 0);
  EXPECT_EQ(*rep.red, 1.0);
  EXPECT_EQ(*rep.red_time, 1.0);
}

TEST(Scatter, WindowsAndReadBack) {
  const auto net = small();
  MetricsOptions opts;
  opts.t = 300;
  opts.sigma = 300;
  opts.emission = EmissionCoefficients{{1, 0, 0, 0, 0, 0}};
  std::stringstream buf;
  write_redundancy_scatter(buf, sample_result(), net, opts);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')), "window_start,red,emission_proxy");
  const auto pts = read_scatter(buf, "red", "emission_proxy");
  ASSERT_EQ(pts.size(), 2u);  // windows at 0 and 300
  EXPECT_DOUBLE_EQ(pts[0].x, 5.0 / 4.0);
  EXPECT_DOUBLE_EQ(pts[0].y, 110.0);
  EXPECT_EQ(pts[1].x, 1.0);

  std::istringstream missing("a,b\n1,2\n");
  EXPECT_THROW(read_scatter(missing, "a", "c"), ParseError);
}

TEST(EmissionCoefficients, Parse) {
  const auto c = parse_emission_coefficients("1, 2,3,4.5,-1,0");
  EXPECT_EQ(c.c[3], 4.5);
  EXPECT_EQ(c.c[4], -1.0);
  EXPECT_THROW(parse_emission_coefficients("1,2,3"), ValidationError);
  EXPECT_THROW(parse_emission_coefficients("1,2,3,4,5,x"), ValidationError);
}

}  // namespace
}  // namespace ta
