#pragma once

// Named verification suites and the run-all matrix driver behind the CLI.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qembed/embed.hpp"
#include "qembed/report.hpp"

namespace qembed {

// Bad parameters or configuration files; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string suite;
  int n = 2;
  int r = 0;
  int eps = -1;
  int d = 1;
  int lo = -8;
  int hi = 8;
  int threads = 0;  // 0 keeps the OpenMP default
  std::size_t memo_cap = std::size_t{1} << 18;
  Mutation mutation = Mutation::none;
  int pmax = 4;
  std::uint64_t seed = 1;
  int count = 0;  // 0 picks the suite default (1000 expressions, 100 matrix pairs)

  void validate() const;
  EmbeddingSpec spec() const { return {n, r, eps, mutation}; }
  // Only the parameters the suite reads; never threads or memo_cap.
  nlohmann::json params() const;
  // Overrides fields present in j; unknown keys raise ConfigError.
  void apply_json(const nlohmann::json& j);
};

const std::vector<std::string>& suite_names();

// Runs one suite.  Throws ConfigError for invalid configurations.
Report run_suite(const SuiteConfig& cfg);

struct RunAllOptions {
  int threads = 0;
  Mutation mutation = Mutation::none;
  bool with_timing = true;
};

// Config shape:
//   {"defaults": {...}, "runs": [{"suite": NAME, "matrix": {KEY: [values] | "all"}, ...}]}
// "r": "all" expands to 0..n-1.  Returns the aggregated report; `ok` is set
// iff every check passed.
nlohmann::json run_all(const nlohmann::json& config, const RunAllOptions& opts, bool& ok);

// Expanded list of configurations, in run order.
std::vector<SuiteConfig> expand_config(const nlohmann::json& config);

// Generated expressions for the round-trip suite.
AlgebraExpression random_expression(int m, std::mt19937_64& rng);

}  // namespace qembed
