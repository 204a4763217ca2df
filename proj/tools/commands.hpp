#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace roughsew::cli {

// Exit codes of every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kToleranceEnv = "ROUGHSEW_TOLERANCE";

// Thrown for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  std::optional<double> flag;  // --tolerance
  std::optional<double> env;   // ROUGHSEW_TOLERANCE

  double resolve(double module_default) const;
  std::string source() const;
};

/// Reads ROUGHSEW_TOLERANCE; throws UsageError when it is not a positive number.
std::optional<double> tolerance_from_env();

struct RunConfig {
  std::string subcommand;
  std::string name;  // suite, demo or generator kind
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<int> level;
  std::optional<int> target_level;
  std::optional<int> alphabet_size;
  int truncation = 4;
  double horizon = 1.0;
  std::uint64_t seed = 7;
  int columns = 1;
  std::optional<double> coeff;
  std::optional<double> weierstrass_a;
  std::optional<double> weierstrass_b;
  std::vector<double> poly;
  Tolerance tolerance;
  std::string input;
  std::string output;
  std::string report;
  std::string path_x;
  std::string path_y;
  std::vector<std::string> perturb;  // h=FILE
  std::optional<int> min_level;
  std::optional<int> max_level;
};

/// A subcommand's result: the exit code and the JSON document (empty when
/// the command emits none).
struct Outcome {
  int exit_code = kExitPass;
  nlohmann::json report;
};

Outcome run_sew(const RunConfig& config);
Outcome run_extend(const RunConfig& config);
Outcome run_verify(const RunConfig& config);
Outcome run_demo(const RunConfig& config);
Outcome run_gen_path(const RunConfig& config);
Outcome run_gen_germ(const RunConfig& config);

}  // namespace roughsew::cli
