#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aoib {

/// Per-source local channel statistics. Counts only slots in which the
/// source actually acquired the channel; collision losers learn nothing.
/// Success counts are kept as integers so the empirical mean is exact.
class EstimatorState {
 public:
  explicit EstimatorState(int N = 0)
      : successes_(static_cast<std::size_t>(N), 0),
        plays_(static_cast<std::size_t>(N), 0) {}

  int channels() const { return static_cast<int>(plays_.size()); }

  std::int64_t plays(int n) const { return plays_[static_cast<std::size_t>(n)]; }
  std::int64_t successes(int n) const { return successes_[static_cast<std::size_t>(n)]; }

  /// Empirical success rate; 0 before the first acquired play.
  double mu_hat(int n) const {
    auto T = plays_[static_cast<std::size_t>(n)];
    if (T == 0) return 0.0;
    return static_cast<double>(successes_[static_cast<std::size_t>(n)]) /
           static_cast<double>(T);
  }

  /// Beta posterior parameters: alpha = successes + 1, beta = failures + 1.
  double alpha(int n) const {
    return static_cast<double>(successes_[static_cast<std::size_t>(n)] + 1);
  }
  double beta(int n) const {
    return static_cast<double>(plays_[static_cast<std::size_t>(n)] -
                               successes_[static_cast<std::size_t>(n)] + 1);
  }

  /// Records one play. No-op unless the channel was acquired.
  void observe(int chosen, bool acquired, bool success) {
    if (!acquired) return;
    plays_[static_cast<std::size_t>(chosen)] += 1;
    if (success) successes_[static_cast<std::size_t>(chosen)] += 1;
  }

 private:
  std::vector<std::int64_t> successes_;
  std::vector<std::int64_t> plays_;
};

/// Optimistic index mu_hat + sqrt(2 ln t / plays); +infinity when unplayed.
double ucb_index(double mu_hat, std::int64_t plays, std::int64_t t);

/// Pessimistic mirror mu_hat - sqrt(2 ln t / plays); -infinity when unplayed.
double lcb_index(double mu_hat, std::int64_t plays, std::int64_t t);

/// Index of the channel holding the k-th largest value (k is 1-based).
/// Equal values rank in increasing index order, so under a full tie the
/// k-th largest is simply channel k-1.
int kth_largest_index(std::span<const double> values, int k);

/// Value of the k-th smallest entry (k is 1-based).
double kth_smallest_value(std::span<const double> values, int k);

}  // namespace aoib
