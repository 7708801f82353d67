#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ordpat::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSeedEnv = "ORDPAT_SEED";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidInput = 2,
  kInsufficientData = 3,
};

/// Fully resolved invocation. Every output embeds this (JSON) or carries it
/// in a `<out>.run.json` sidecar (CSV); feeding it back through --config
/// reproduces the output.
struct RunConfig {
  std::string subcommand;
  /// synth: logistic | random | shuffle. baseline: uniform | shuffle.
  std::string kind;

  std::string input;
  std::string column = "value";
  std::string date_column;
  std::string delimiter = ",";
  bool header = true;
  std::string order = "require-ascending";
  bool first_difference = false;

  std::vector<int> dims;
  std::string tie_policy = "stable";
  std::uint64_t seed = 0;
  std::string seed_source = "default";

  std::size_t n = 0;
  std::optional<double> x0;
  std::size_t transient = 1000;

  std::string baseline_kind = "uniform";
  std::size_t members = 20;
  double threshold = 10.0;
  std::size_t curve_points = 24;
  std::vector<std::size_t> prefixes;

  std::size_t window = 200;
  std::size_t step = 1;
  std::optional<std::size_t> rolling_window;
  std::size_t rolling_step = 1;
  int rolling_d = 5;

  std::string format;
  std::string out;
  std::string curves_out;
};

nlohmann::json to_json(const RunConfig& config);
/// Accepts a bare config or any document that embeds one under "run_config".
RunConfig config_from_json(const nlohmann::json& j);

/// Executes a resolved config. Data goes to config.out (or `out` when
/// empty); diagnostics go to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordpat::cli
