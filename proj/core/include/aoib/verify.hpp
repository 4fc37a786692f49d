#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aoib/instance.hpp"
#include "aoib/rng.hpp"

namespace aoib {

struct TooLarge : std::length_error {
  using std::length_error::length_error;
};

/// A periodic deterministic schedule: entry (m, col) is the 0-based channel
/// source m uses in period column col. With `periodic_extension` the pattern
/// repeats into the unbounded past, which is what steady-state evaluation
/// assumes.
struct ScheduleMatrix {
  int M = 0;
  int period = 0;
  std::vector<int> channels;  // M x period, row-major
  bool periodic_extension = true;

  /// Channel for source m in slot t (t may be any integer when periodic).
  int at(int m, std::int64_t t) const;

  int& cell(int m, int col) {
    return channels[static_cast<std::size_t>(m) * static_cast<std::size_t>(period) +
                    static_cast<std::size_t>(col)];
  }
  int cell(int m, int col) const {
    return channels[static_cast<std::size_t>(m) * static_cast<std::size_t>(period) +
                    static_cast<std::size_t>(col)];
  }
};

/// The round-robin schedule: source m's column-(t) channel is its fairness
/// rank for that slot, so each column is a permutation of the best-M set.
ScheduleMatrix round_robin_schedule(int M);

/// Exact expected age of source m in slot t under a deterministic schedule:
/// the tail sum 1 + q(t-1) + q(t-1)q(t-2) + ... with q(s) = 1 - mu[channel
/// used in slot s], truncated once the running product drops below tol
/// (absolute truncation error below tol / mu_min).
double expected_aoi_schedule(std::span<const double> mu,
                             const ScheduleMatrix& sched, int m, std::int64_t t,
                             double tol = 1e-12);
double expected_aoi_schedule(const ProblemInstance& instance,
                             const ScheduleMatrix& sched, int m, std::int64_t t,
                             double tol = 1e-12);

/// Steady-state expected slot total: sum over sources of the expected age,
/// averaged over one period.
double steady_state_total_aoi(std::span<const double> mu,
                              const ScheduleMatrix& sched, double tol = 1e-12);

struct EvaluatedSchedule {
  ScheduleMatrix schedule;  // canonical representative of its shift class
  double total_aoi = 0.0;
  bool is_round_robin = false;
  /// True when every within-period prefix profile equals round-robin's
  /// (i distinct channels after i slots); false means the profile strictly
  /// majorizes round-robin's somewhere.
  bool uniform_windows = true;
};

struct EnumerationResult {
  std::vector<EvaluatedSchedule> schedules;  // ascending by total_aoi
  double round_robin_total = 0.0;
};

/// Enumerates every collision-free best-M symmetric M-periodic schedule
/// (columns are permutations of the best-M set, cumulative per-source usage
/// profiles coincide), identified up to cyclic time shifts, and evaluates
/// each one exactly. Throws TooLarge for M > 4.
EnumerationResult enumerate_symmetric_policies(const ProblemInstance& instance,
                                               double tol = 1e-12);

struct RrIidComparison {
  double rr_total = 0.0;
  double iid_total = 0.0;
  bool rr_no_worse = false;
};

/// Exact round-robin slot total versus the closed-form value of the uniform
/// IID policy over the best-M set (M divided by the mean of the top-M
/// probabilities).
RrIidComparison compare_rr_iid(const ProblemInstance& instance);
RrIidComparison compare_rr_iid(std::span<const double> mu, int M);

/// Per-source channel probabilities of an IID policy; row m is the
/// distribution source m draws its channel from.
struct IIDWeights {
  int M = 0;
  int N = 0;
  std::vector<double> lambda;  // M x N, row-major

  double& cell(int m, int j) {
    return lambda[static_cast<std::size_t>(m) * static_cast<std::size_t>(N) +
                  static_cast<std::size_t>(j)];
  }
  double cell(int m, int j) const {
    return lambda[static_cast<std::size_t>(m) * static_cast<std::size_t>(N) +
                  static_cast<std::size_t>(j)];
  }
};

/// Expected slot total of an IID policy: sum over sources of the inverse
/// effective success probability.
double iid_total_aoi(const IIDWeights& weights, std::span<const double> mu);

struct IidOptimumCheck {
  double uniform_value = 0.0;
  double worst_delta = 0.0;  // min over samples of f(lambda) - f(uniform)
  int samples = 0;
};

/// Random search over feasible IID weight matrices (doubly stochastic on
/// the best-M block, zero elsewhere): no sample should beat the uniform
/// 1/M matrix beyond numerical tolerance.
IidOptimumCheck check_iid_optimum(const ProblemInstance& instance, int samples,
                                  std::uint64_t seed = 0);

}  // namespace aoib
