#include "aoib/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace aoib {

std::vector<std::int64_t> RunTrace::cumulative_total_aoi() const {
  std::vector<std::int64_t> cum(static_cast<std::size_t>(T), 0);
  std::int64_t running = 0;
  for (std::int64_t t = 1; t <= T; ++t) {
    for (int m = 0; m < M; ++m) {
      running += aoi(m, t);
    }
    cum[static_cast<std::size_t>(t - 1)] = running;
  }
  return cum;
}

double RunTrace::mean_aoi(int m) const {
  std::int64_t total = 0;
  for (std::int64_t t = 1; t <= T; ++t) total += aoi(m, t);
  return static_cast<double>(total) / static_cast<double>(T);
}

void RegretAccumulator::add(const RunTrace& candidate, const RunTrace& oracle) {
  if (candidate.T != T_ || oracle.T != T_ || candidate.M != oracle.M) {
    throw LengthMismatch("candidate and oracle traces do not match horizon");
  }
  std::int64_t diff = 0;
  for (std::int64_t t = 1; t <= T_; ++t) {
    for (int m = 0; m < candidate.M; ++m) {
      diff += static_cast<std::int64_t>(candidate.aoi(m, t)) -
              static_cast<std::int64_t>(oracle.aoi(m, t));
    }
    sum_[static_cast<std::size_t>(t - 1)] += diff;
    sumsq_[static_cast<std::size_t>(t - 1)] +=
        static_cast<__int128>(diff) * static_cast<__int128>(diff);
  }
  ++count_;
}

RegretCurve RegretAccumulator::curve() const {
  RegretCurve out;
  out.T = T_;
  out.iterations = count_;
  out.mean.resize(static_cast<std::size_t>(T_), 0.0);
  out.stderr_.resize(static_cast<std::size_t>(T_), 0.0);
  if (count_ == 0) return out;
  const double n = static_cast<double>(count_);
  for (std::size_t i = 0; i < out.mean.size(); ++i) {
    const double s = static_cast<double>(sum_[i]);
    out.mean[i] = s / n;
    if (count_ >= 2) {
      const double ss = static_cast<double>(sumsq_[i]);
      double var = (ss - s * s / n) / (n - 1.0);
      if (var < 0.0) var = 0.0;  // exact-integer roundoff guard
      out.stderr_[i] = std::sqrt(var / n);
    }
  }
  return out;
}

RegretCurve regret(std::span<const RunTrace> candidate,
                   std::span<const RunTrace> oracle) {
  if (candidate.size() != oracle.size() || candidate.empty()) {
    throw LengthMismatch("need equally many candidate and oracle traces");
  }
  RegretAccumulator acc(candidate.front().T);
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    acc.add(candidate[i], oracle[i]);
  }
  return acc.curve();
}

std::vector<double> pull_table(std::span<const RunTrace> traces) {
  if (traces.empty()) throw LengthMismatch("no traces");
  const int M = traces.front().M;
  const int N = traces.front().N;
  std::vector<std::int64_t> sums(static_cast<std::size_t>(M) * static_cast<std::size_t>(N), 0);
  for (const RunTrace& trace : traces) {
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += trace.pulls[i];
  }
  std::vector<double> mean(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    mean[i] = static_cast<double>(sums[i]) / static_cast<double>(traces.size());
  }
  return mean;
}

CollisionStats collision_stats(std::span<const RunTrace> traces) {
  CollisionStats stats;
  if (traces.empty()) return stats;
  std::int64_t sum = 0;
  __int128 sumsq = 0;
  for (const RunTrace& trace : traces) {
    sum += trace.collisions;
    sumsq += static_cast<__int128>(trace.collisions) *
             static_cast<__int128>(trace.collisions);
  }
  const double n = static_cast<double>(traces.size());
  stats.mean = static_cast<double>(sum) / n;
  if (traces.size() >= 2) {
    double var = (static_cast<double>(sumsq) -
                  static_cast<double>(sum) * static_cast<double>(sum) / n) /
                 (n - 1.0);
    if (var < 0.0) var = 0.0;
    stats.stderr_ = std::sqrt(var / n);
  }
  return stats;
}

BoundTerms dlf_regret_bound(const ProblemInstance& instance, std::int64_t T) {
  if (instance.M < 2) {
    throw ValidationError("bound needs M >= 2; the top-M gap is undefined for M=1");
  }
  if (T <= instance.N) {
    throw ValidationError("bound needs T > N");
  }
  if (!(instance.delta > 0.0)) {
    throw DegenerateGap("top-M gap must be positive");
  }

  const double M = static_cast<double>(instance.M);
  const double N = static_cast<double>(instance.N);
  const double logT = std::log(static_cast<double>(T));

  // ln of the geometric mean of (1 - mu_i) over the best-M channels.
  double log_gm = 0.0;
  for (int i = 0; i < instance.M; ++i) {
    log_gm += std::log(1.0 - instance.mu[static_cast<std::size_t>(i)]);
  }
  log_gm /= M;

  BoundTerms bound;
  bound.c_prime = -1.0 / log_gm;
  bound.c = bound.c_prime / M;

  const double per_arm =
      8.0 * logT / (instance.delta * instance.delta) + 1.0 +
      2.0 * std::numbers::pi * std::numbers::pi / 3.0;
  bound.suboptimal_bound = (N - 1.0) * per_arm;
  bound.contention_bound = (M - 1.0) * per_arm;
  bound.total_bound =
      M * M / instance.mu_min +
      (M * M * bound.c * logT / instance.mu_min) * (1.0 + bound.suboptimal_bound);
  return bound;
}

}  // namespace aoib
