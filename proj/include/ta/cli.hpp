#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ta/assign.hpp"

namespace ta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Bad flags or parameter values; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kAlgorithms = {"metis", "aon", "ita", "pp", "gr", "pr", "kd", "pla", "kmd"};

// Algorithm parameters as given on the command line; unset values take the
// per-algorithm defaults.
struct AlgoParams {
  std::string algo;
  std::optional<double> p;
  std::optional<double> s;
  std::optional<int> k;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::vector<double> splits;
  std::uint64_t seed = 0;
  std::string selection = "score";
  std::string penalization = "forward_looking";
  double cell = 1000.0;  // m, tile size for METIS scoring
};

// Throws UsageError for an unknown tag or a value outside the allowed range.
// Returns the names of given parameters the algorithm ignores.
std::vector<std::string> validate(const AlgoParams& params);

// Copy with every parameter the algorithm uses set to its effective value
// and every ignored one cleared.
AlgoParams resolve(const AlgoParams& params);

// [assign] option file that reproduces a run: network, demand, algorithm and
// all effective parameters.
std::string config_snapshot(const AlgoParams& params, const std::string& network, const std::string& demand);

AssignmentResult run_algorithm(const RoadNetwork& net, const MobilityDemand& demand, const AlgoParams& params);

// Full command line including the program name; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ta::cli
