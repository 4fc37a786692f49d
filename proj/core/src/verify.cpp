#include "aoib/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "aoib/env.hpp"

namespace aoib {

int ScheduleMatrix::at(int m, std::int64_t t) const {
  std::int64_t col = (t - 1) % period;
  if (col < 0) col += period;
  if (!periodic_extension && (t < 1 || t > period)) {
    throw std::out_of_range("slot outside non-periodic schedule");
  }
  return cell(m, static_cast<int>(col));
}

ScheduleMatrix round_robin_schedule(int M) {
  ScheduleMatrix rr;
  rr.M = M;
  rr.period = M;
  rr.channels.resize(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    for (int col = 0; col < M; ++col) {
      rr.cell(m, col) = fairness_rank(m, col + 1, M) - 1;
    }
  }
  return rr;
}

double expected_aoi_schedule(std::span<const double> mu,
                             const ScheduleMatrix& sched, int m, std::int64_t t,
                             double tol) {
  double sum = 1.0;
  double prod = 1.0;
  for (std::int64_t i = 1;; ++i) {
    prod *= 1.0 - mu[static_cast<std::size_t>(sched.at(m, t - i))];
    if (prod < tol) break;
    sum += prod;
  }
  return sum;
}

double expected_aoi_schedule(const ProblemInstance& instance,
                             const ScheduleMatrix& sched, int m, std::int64_t t,
                             double tol) {
  return expected_aoi_schedule(std::span<const double>(instance.mu), sched, m, t,
                               tol);
}

double steady_state_total_aoi(std::span<const double> mu,
                              const ScheduleMatrix& sched, double tol) {
  double sum = 0.0;
  for (int col = 0; col < sched.period; ++col) {
    for (int m = 0; m < sched.M; ++m) {
      sum += expected_aoi_schedule(mu, sched, m, col + 1, tol);
    }
  }
  return sum / static_cast<double>(sched.period);
}

namespace {

std::vector<std::vector<int>> all_permutations(int M) {
  std::vector<int> base(static_cast<std::size_t>(M));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return perms;
}

/// Sorted (descending) per-source cumulative channel-usage counts match
/// across sources at every prefix length up to a few periods.
bool is_symmetric(const ScheduleMatrix& sched) {
  const int M = sched.M;
  const std::int64_t horizon = static_cast<std::int64_t>(M) * (M + 2);
  std::vector<std::vector<int>> counts(
      static_cast<std::size_t>(M), std::vector<int>(static_cast<std::size_t>(M), 0));
  for (std::int64_t tau = 1; tau <= horizon; ++tau) {
    for (int m = 0; m < M; ++m) {
      counts[static_cast<std::size_t>(m)][static_cast<std::size_t>(sched.at(m, tau))]++;
    }
    std::vector<int> ref = counts[0];
    std::sort(ref.begin(), ref.end(), std::greater<>());
    for (int m = 1; m < M; ++m) {
      std::vector<int> cur = counts[static_cast<std::size_t>(m)];
      std::sort(cur.begin(), cur.end(), std::greater<>());
      if (cur != ref) return false;
    }
  }
  return true;
}

/// Prefix profile after the first i columns: does each source use i distinct
/// channels (the round-robin shape)?
bool has_uniform_windows(const ScheduleMatrix& sched) {
  const int M = sched.M;
  for (int m = 0; m < M; ++m) {
    std::vector<int> count(static_cast<std::size_t>(M), 0);
    for (int col = 0; col < M; ++col) {
      if (++count[static_cast<std::size_t>(sched.cell(m, col))] > 1) return false;
    }
  }
  return true;
}

std::vector<int> canonical_key(const ScheduleMatrix& sched) {
  const int M = sched.M;
  std::vector<int> best;
  for (int shift = 0; shift < sched.period; ++shift) {
    std::vector<int> key;
    key.reserve(sched.channels.size());
    for (int m = 0; m < M; ++m) {
      for (int col = 0; col < sched.period; ++col) {
        key.push_back(sched.cell(m, (col + shift) % sched.period));
      }
    }
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

ScheduleMatrix from_key(int M, const std::vector<int>& key) {
  ScheduleMatrix sched;
  sched.M = M;
  sched.period = M;
  sched.channels = key;
  return sched;
}

}  // namespace

EnumerationResult enumerate_symmetric_policies(const ProblemInstance& instance,
                                               double tol) {
  const int M = instance.M;
  if (M > 4) {
    throw TooLarge("schedule enumeration is capped at M <= 4, got M=" +
                   std::to_string(M));
  }

  const auto perms = all_permutations(M);
  const std::size_t perm_count = perms.size();
  std::size_t total = 1;
  for (int i = 0; i < M; ++i) total *= perm_count;

  std::map<std::vector<int>, double> seen;
  ScheduleMatrix sched;
  sched.M = M;
  sched.period = M;
  sched.channels.resize(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));

  std::span<const double> mu(instance.mu);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int col = 0; col < M; ++col) {
      const auto& perm = perms[rest % perm_count];
      rest /= perm_count;
      for (int m = 0; m < M; ++m) {
        sched.cell(m, col) = perm[static_cast<std::size_t>(m)];
      }
    }
    if (!is_symmetric(sched)) continue;
    auto key = canonical_key(sched);
    if (seen.contains(key)) continue;
    seen.emplace(std::move(key), steady_state_total_aoi(mu, sched, tol));
  }

  const auto rr_key = canonical_key(round_robin_schedule(M));

  EnumerationResult result;
  result.schedules.reserve(seen.size());
  for (const auto& [key, value] : seen) {
    EvaluatedSchedule entry;
    entry.schedule = from_key(M, key);
    entry.total_aoi = value;
    entry.is_round_robin = (key == rr_key);
    entry.uniform_windows = has_uniform_windows(entry.schedule);
    if (entry.is_round_robin) result.round_robin_total = value;
    result.schedules.push_back(std::move(entry));
  }
  std::stable_sort(result.schedules.begin(), result.schedules.end(),
                   [](const EvaluatedSchedule& a, const EvaluatedSchedule& b) {
                     return a.total_aoi < b.total_aoi;
                   });
  return result;
}

RrIidComparison compare_rr_iid(std::span<const double> mu, int M) {
  RrIidComparison cmp;
  cmp.rr_total = steady_state_total_aoi(mu, round_robin_schedule(M));
  double mean = 0.0;
  for (int j = 0; j < M; ++j) mean += mu[static_cast<std::size_t>(j)];
  mean /= static_cast<double>(M);
  cmp.iid_total = static_cast<double>(M) / mean;
  cmp.rr_no_worse = cmp.rr_total <= cmp.iid_total + 1e-9;
  return cmp;
}

RrIidComparison compare_rr_iid(const ProblemInstance& instance) {
  return compare_rr_iid(std::span<const double>(instance.mu), instance.M);
}

double iid_total_aoi(const IIDWeights& weights, std::span<const double> mu) {
  double total = 0.0;
  for (int m = 0; m < weights.M; ++m) {
    double effective = 0.0;
    for (int j = 0; j < weights.N; ++j) {
      effective += weights.cell(m, j) * mu[static_cast<std::size_t>(j)];
    }
    total += 1.0 / effective;
  }
  return total;
}

namespace {

/// Sinkhorn balancing of a positive matrix to doubly stochastic form.
void make_doubly_stochastic(std::vector<double>& x, int M) {
  auto idx = [M](int i, int j) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(M) +
           static_cast<std::size_t>(j);
  };
  for (int iter = 0; iter < 10000; ++iter) {
    for (int i = 0; i < M; ++i) {
      double s = 0.0;
      for (int j = 0; j < M; ++j) s += x[idx(i, j)];
      for (int j = 0; j < M; ++j) x[idx(i, j)] /= s;
    }
    double worst = 0.0;
    for (int j = 0; j < M; ++j) {
      double s = 0.0;
      for (int i = 0; i < M; ++i) s += x[idx(i, j)];
      for (int i = 0; i < M; ++i) x[idx(i, j)] /= s;
      worst = std::max(worst, std::abs(s - 1.0));
    }
    if (worst < 1e-10) break;
  }
}

}  // namespace

IidOptimumCheck check_iid_optimum(const ProblemInstance& instance, int samples,
                                  std::uint64_t seed) {
  const int M = instance.M;
  IidOptimumCheck check;
  check.samples = samples;

  IIDWeights uniform;
  uniform.M = M;
  uniform.N = instance.N;
  uniform.lambda.assign(static_cast<std::size_t>(M) * static_cast<std::size_t>(instance.N), 0.0);
  for (int m = 0; m < M; ++m) {
    for (int j = 0; j < M; ++j) {
      uniform.cell(m, j) = 1.0 / static_cast<double>(M);
    }
  }
  check.uniform_value = iid_total_aoi(uniform, instance.mu);

  RngEngine g = derive_stream({seed, 0, StreamRole::PolicySampling}, 0x56455249ULL);
  std::vector<double> block(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));
  double worst = std::numeric_limits<double>::infinity();
  IIDWeights candidate = uniform;
  for (int s = 0; s < samples; ++s) {
    for (double& v : block) v = uniform01(g) + 1e-3;
    make_doubly_stochastic(block, M);
    for (int m = 0; m < M; ++m) {
      for (int j = 0; j < M; ++j) {
        candidate.cell(m, j) = block[static_cast<std::size_t>(m) * static_cast<std::size_t>(M) +
                                     static_cast<std::size_t>(j)];
      }
    }
    worst = std::min(worst, iid_total_aoi(candidate, instance.mu) - check.uniform_value);
  }
  check.worst_delta = samples > 0 ? worst : 0.0;
  return check;
}

}  // namespace aoib
