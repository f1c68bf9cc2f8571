#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parafermion/exponents.hpp"

namespace parafermion::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2, kCapacityError = 3 };

// Validated settings of one invocation. `workers` is deliberately left out
// of the serialised form so that outputs do not depend on it.
struct RunConfig {
  std::string command;
  std::string mode;  // verify: local | massive | global
  int T = 2;
  int L = 1;
  std::vector<double> n{0.0};
  std::string branch = "dilute";
  std::string xGrid;
  std::vector<double> x;
  double tolerance = 1e-10;
  std::string out = ".";
  unsigned workers = 1;
  std::string precision = "double";
  unsigned digits = 50;
  std::size_t vertexCap = 64;
  std::string alpha = "pi";
  std::string region = "interior";
  int jMin = 1;
  int jMax = 0;  // 0: no upper limit
  std::vector<std::string> eta;
  std::vector<long> j;
  std::vector<std::string> inputs;
};

nlohmann::json to_json(const RunConfig& config);

// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_x_grid(const std::string& spec);

struct WedgeAngle {
  double overPi;                 // alpha / pi
  std::optional<Rational> exact; // when alpha is a rational multiple of pi
};

// "pi", "pi/3", "2pi/3", "2*pi/3", "0.5pi", or radians such as "1.5".
WedgeAngle parse_alpha(const std::string& spec);

// Entry points. Messages go to `out` and `err`; artifacts to config.out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace parafermion::cli
