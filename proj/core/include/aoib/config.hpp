#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoib/instance.hpp"
#include "aoib/policies.hpp"
#include "aoib/policy_kind.hpp"

namespace aoib {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance description as configured: either an explicit probability
/// vector or the equidistant generator (mu1, delta).
struct InstanceSpec {
  int M = 0;
  int N = 0;
  std::optional<std::vector<double>> mu;
  std::optional<double> mu1;
  std::optional<double> delta;

  bool is_generator() const { return !mu.has_value(); }
  ProblemInstance build() const;
};

struct ExperimentConfig {
  InstanceSpec instance;
  std::int64_t T = 1;
  std::int64_t iterations = 1;
  std::vector<PolicyKind> policies;
  std::uint64_t master_seed = 0;
  HybridMnRule hybrid_mn = HybridMnRule::ProductMN;
  std::string output_dir = ".";
};

/// Parses a JSON config document. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses a config file.
ExperimentConfig load_config(const std::string& path);

}  // namespace aoib
