#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aoib/instance.hpp"
#include "aoib/policy_kind.hpp"

namespace aoib {

struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Everything one simulated run produces. Ages are recorded at the start of
/// each slot (the value the slot's decision is judged against), so row m is
/// a_m(1), ..., a_m(T) with a_m(1) = 1.
struct RunTrace {
  PolicyKind policy = PolicyKind::OracleRR;
  int M = 0;
  int N = 0;
  std::int64_t T = 0;
  std::vector<std::uint32_t> aoi_series;             // M x T, row-major
  std::vector<std::int64_t> pulls;                   // M x N, row-major
  std::int64_t collisions = 0;                       // contested (channel, slot) events
  std::vector<std::int64_t> per_source_collisions;   // slots with >= 2 on own channel

  std::uint32_t aoi(int m, std::int64_t t) const {
    return aoi_series[static_cast<std::size_t>(m) * static_cast<std::size_t>(T) +
                      static_cast<std::size_t>(t - 1)];
  }
  std::int64_t pull_count(int m, int n) const {
    return pulls[static_cast<std::size_t>(m) * static_cast<std::size_t>(N) +
                 static_cast<std::size_t>(n)];
  }
  /// Sum over sources and slots s <= t of the recorded ages.
  std::vector<std::int64_t> cumulative_total_aoi() const;
  /// Mean recorded age of source m.
  double mean_aoi(int m) const;
};

/// Mean cumulative age gap to the oracle per slot, with its standard error
/// across iterations.
struct RegretCurve {
  std::int64_t T = 0;
  std::int64_t iterations = 0;
  std::vector<double> mean;    // index t-1
  std::vector<double> stderr_; // index t-1

  double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }
  double final_stderr() const { return stderr_.empty() ? 0.0 : stderr_.back(); }
};

/// Streaming accumulator for a regret curve. Per-iteration differences are
/// integers, so accumulation is exact and the result does not depend on the
/// order iterations are folded in.
class RegretAccumulator {
 public:
  RegretAccumulator() = default;
  explicit RegretAccumulator(std::int64_t T)
      : T_(T),
        sum_(static_cast<std::size_t>(T), 0),
        sumsq_(static_cast<std::size_t>(T), 0) {}

  /// Folds one iteration's candidate/oracle pair (coupled tapes).
  void add(const RunTrace& candidate, const RunTrace& oracle);

  RegretCurve curve() const;
  std::int64_t iterations() const { return count_; }

 private:
  std::int64_t T_ = 0;
  std::int64_t count_ = 0;
  std::vector<std::int64_t> sum_;
  std::vector<__int128> sumsq_;
};

/// Regret of a candidate policy against iteration-paired oracle runs.
RegretCurve regret(std::span<const RunTrace> candidate,
                   std::span<const RunTrace> oracle);

/// Mean pulls per (source, channel) across traces; rows sum to T.
std::vector<double> pull_table(std::span<const RunTrace> traces);

/// Mean and standard error of per-run collision totals.
struct CollisionStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};
CollisionStats collision_stats(std::span<const RunTrace> traces);

struct DegenerateGap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Pieces of the analytic DLF regret upper bound.
struct BoundTerms {
  double c_prime = 0.0;            // -1 / ln(geometric mean of (1 - mu_i), i <= M)
  double c = 0.0;                  // c_prime / M
  double suboptimal_bound = 0.0;   // cap on slots spent off the oracle channel
  double contention_bound = 0.0;   // cap on slots the oracle channel is taken
  double total_bound = 0.0;
};

/// Evaluates the closed-form DLF regret upper bound at horizon T.
/// Requires M >= 2 (the gap delta is undefined for a single source) and
/// T > N.
BoundTerms dlf_regret_bound(const ProblemInstance& instance, std::int64_t T);

}  // namespace aoib
