#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aoib/config.hpp"
#include "aoib/metrics.hpp"
#include "aoib/policy_kind.hpp"
#include "aoib/verify.hpp"

namespace aoib {

/// Per-policy aggregate over all Monte-Carlo iterations of an experiment.
struct PolicyAggregate {
  PolicyKind policy = PolicyKind::OracleRR;
  RegretCurve regret;
  std::vector<double> mean_pulls;              // M x N, rows sum to T
  CollisionStats collisions;
  std::vector<double> mean_source_aoi;         // per source, time-averaged
  std::vector<double> mean_source_collisions;  // per source
};

struct ExperimentResult {
  int M = 0;
  int N = 0;
  std::int64_t T = 0;
  std::int64_t iterations = 0;
  std::vector<PolicyAggregate> policies;

  const PolicyAggregate& for_policy(PolicyKind kind) const;
};

/// Runs the Monte-Carlo experiment: per iteration one shared channel tape,
/// one oracle run, and one coupled run per configured policy. Iterations are
/// distributed over `threads` workers (0 = hardware concurrency); all
/// aggregation is exact integer arithmetic, so results do not depend on the
/// thread count or completion order.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 0);

/// Writes regret_curve.csv, pulls.csv, collisions.csv, summary.csv.
void write_experiment_csvs(const ExperimentResult& result, const std::string& dir);

enum class SweepAxis { N, M, Delta };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

struct SweepRow {
  SweepAxis axis = SweepAxis::N;
  double value = 0.0;
  PolicyKind policy = PolicyKind::OracleRR;
  double final_regret = 0.0;
  double stderr_ = 0.0;
  double final_regret_per_m = 0.0;
};

/// Expands the base config along one axis and runs each point.
/// N and Delta sweeps need the generator-form instance spec.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepAxis axis,
                                std::span<const double> values, int threads = 0);

/// Writes sweep.csv.
void write_sweep_csv(std::span<const SweepRow> rows, const std::string& dir);

// ---------------------------------------------------------------------------
// Verification driver
// ---------------------------------------------------------------------------

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_passed() const;
};

/// Runs the analytic checks for an instance: schedule enumeration with the
/// round-robin-minimal and majorization assertions (M <= 4 only), the exact
/// round-robin vs. IID comparison, the random-search optimality check of the
/// uniform IID weights, and the closed-form DLF regret bound (M >= 2).
/// When `schedules_csv_path` is non-empty and enumeration ran, the evaluated
/// schedules are written there as CSV.
VerificationReport run_verification(const ProblemInstance& instance,
                                    std::int64_t T, int samples,
                                    const std::string& schedules_csv_path = "");

}  // namespace aoib
