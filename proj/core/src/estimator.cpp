#include "aoib/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aoib {

double ucb_index(double mu_hat, std::int64_t plays, std::int64_t t) {
  if (plays == 0) return std::numeric_limits<double>::infinity();
  return mu_hat + std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                            static_cast<double>(plays));
}

double lcb_index(double mu_hat, std::int64_t plays, std::int64_t t) {
  if (plays == 0) return -std::numeric_limits<double>::infinity();
  return mu_hat - std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                            static_cast<double>(plays));
}

int kth_largest_index(std::span<const double> values, int k) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] >
           values[static_cast<std::size_t>(b)];
  });
  return order[static_cast<std::size_t>(k - 1)];
}

double kth_smallest_value(std::span<const double> values, int k) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted[static_cast<std::size_t>(k - 1)];
}

}  // namespace aoib
