#pragma once

#include <array>
#include <span>
#include <vector>

#include "ta/assign.hpp"
#include "ta/network.hpp"
#include "ta/routing.hpp"

namespace ta {

// Percent of the network length covered by the union of the routes' edges.
double road_coverage(std::span<const Route> routes, const RoadNetwork& net);

// Edge traversals (with multiplicity) per distinct edge used. Throws
// UndefinedError when no route has an edge.
double redundancy(std::span<const Route> routes);

inline constexpr double kDefaultRedWindow = 300.0;
inline constexpr double kDefaultRedShift = 60.0;

// Mean redundancy over the departure windows [i, i + t) for i = t0, t0 + sigma,
// ... <= tmax. Windows without routes are skipped, or raise UndefinedError in
// strict mode; UndefinedError also when every window is empty.
double time_redundancy(std::span<const Assignment> assignments, double t, double sigma, double t0, double tmax,
                       bool strict = false);

// Windows start at the result's window start and stop at end - t, so that
// the last window closes with the demand window.
double time_redundancy(const AssignmentResult& result, double t = kDefaultRedWindow, double sigma = kDefaultRedShift,
                       bool strict = false);

struct EmissionCoefficients {
  std::array<double, 6> c{};
};

// c0 + c1*s*a + c2*s*a^2 + c3*s + c4*s^2 + c5*s^3, floored at zero.
double hbefa3_emission(double speed, double accel, const EmissionCoefficients& c);

struct SpeedSample {
  double t;
  double speed;  // m/s
  double accel;  // m/s^2
};

struct SpeedProfile {
  double step = 1.0;
  std::vector<SpeedSample> samples;
};

double trajectory_emissions(const SpeedProfile& profile, const EmissionCoefficients& c);

// Each edge driven at max_speed / s for its slowed free-flow duration, sampled
// every `step` seconds; acceleration is the backward difference of speeds.
SpeedProfile synth_freeflow_profile(const Route& r, const RoadNetwork& net, double s, double step);

struct Correlation {
  double r = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n = 0;
};

struct ScatterPoint {
  double x;
  double y;
};

// Pearson r and the least-squares line y = slope * x + intercept. Needs at
// least three points; zero variance raises UndefinedError("degenerate").
Correlation correlation_report(std::span<const ScatterPoint> points);

}  // namespace ta
