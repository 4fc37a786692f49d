#include "aoib/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aoib {

int dlf_select(const EstimatorState& est, std::int64_t t, int k) {
  const int N = est.channels();
  std::vector<double> ucb(static_cast<std::size_t>(N));
  std::vector<double> lcb(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    ucb[static_cast<std::size_t>(n)] = ucb_index(est.mu_hat(n), est.plays(n), t);
    lcb[static_cast<std::size_t>(n)] = lcb_index(est.mu_hat(n), est.plays(n), t);
  }

  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ucb[static_cast<std::size_t>(a)] > ucb[static_cast<std::size_t>(b)];
  });

  int best = order[0];
  double best_lcb = lcb[static_cast<std::size_t>(best)];
  for (int i = 1; i < k; ++i) {
    int cand = order[static_cast<std::size_t>(i)];
    double v = lcb[static_cast<std::size_t>(cand)];
    if (v <= best_lcb) {
      best = cand;
      best_lcb = v;
    }
  }
  return best;
}

int dlts_select(const EstimatorState& est, int k, RngEngine& sample_stream) {
  const int N = est.channels();
  std::vector<double> theta(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    theta[static_cast<std::size_t>(n)] =
        sample_beta(sample_stream, est.alpha(n), est.beta(n));
  }
  return kth_largest_index(theta, k);
}

double aoi_threshold(const EstimatorState& est, int k) {
  const int N = est.channels();
  std::vector<double> ratio(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    ratio[static_cast<std::size_t>(n)] = (est.alpha(n) + est.beta(n)) / est.alpha(n);
  }
  return kth_smallest_value(ratio, k);
}

int exploit_select(const EstimatorState& est, int k) {
  const int N = est.channels();
  std::vector<double> mean(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    mean[static_cast<std::size_t>(n)] = est.mu_hat(n);
  }
  return kth_largest_index(mean, k);
}

double hybrid_mn_factor(HybridMnRule rule, int M, int N, int m) {
  switch (rule) {
    case HybridMnRule::ProductMN:
      return static_cast<double>(M) * static_cast<double>(N);
    case HybridMnRule::SourceTimesN:
      return static_cast<double>(m + 1) * static_cast<double>(N);
  }
  return 0.0;
}

HybridSwitch draw_hybrid_switch(double mn_factor, std::int64_t t,
                                RngEngine& switch_stream) {
  double p = std::min(1.0, mn_factor * std::log(static_cast<double>(t)) /
                               static_cast<double>(t));
  return HybridSwitch{p, bernoulli(switch_stream, p)};
}

void LearningPolicy::require_initialized(std::int64_t t) const {
  for (int n = 0; n < est_.channels(); ++n) {
    if (est_.plays(n) == 0) {
      throw Uninitialized("channel " + std::to_string(n) +
                          " unplayed at slot " + std::to_string(t));
    }
  }
}

int DlfPolicy::decide(const PolicyContext& ctx) {
  const int N = est_.channels();
  if (ctx.t <= N) return dlf_init_channel(ctx.m, ctx.t, N);
  require_initialized(ctx.t);
  return dlf_select(est_, ctx.t, ctx.k);
}

int DltsPolicy::decide(const PolicyContext& ctx) {
  return dlts_select(est_, ctx.k, sample_);
}

int DlhPolicy::decide(const PolicyContext& ctx) {
  const int N = est_.channels();
  HybridSwitch sw = draw_hybrid_switch(mn_factor_, ctx.t, switch_);
  if (sw.use_dlf) {
    if (ctx.t <= N) return dlf_init_channel(ctx.m, ctx.t, N);
    return dlf_select(est_, ctx.t, ctx.k);
  }
  return dlts_select(est_, ctx.k, sample_);
}

int DlfAaPolicy::decide(const PolicyContext& ctx) {
  const int N = est_.channels();
  if (ctx.t <= N) return dlf_init_channel(ctx.m, ctx.t, N);
  require_initialized(ctx.t);
  if (static_cast<double>(ctx.aoi_prev) > aoi_threshold(est_, ctx.k)) {
    return exploit_select(est_, ctx.k);
  }
  return dlf_select(est_, ctx.t, ctx.k);
}

int DltsAaPolicy::decide(const PolicyContext& ctx) {
  if (static_cast<double>(ctx.aoi_prev) > aoi_threshold(est_, ctx.k)) {
    return exploit_select(est_, ctx.k);
  }
  return dlts_select(est_, ctx.k, sample_);
}

int DlhAaPolicy::decide(const PolicyContext& ctx) {
  const int N = est_.channels();
  HybridSwitch sw = draw_hybrid_switch(mn_factor_, ctx.t, switch_);
  if (sw.use_dlf) {
    if (ctx.t <= N) return dlf_init_channel(ctx.m, ctx.t, N);
    if (static_cast<double>(ctx.aoi_prev) > aoi_threshold(est_, ctx.k)) {
      return exploit_select(est_, ctx.k);
    }
    return dlf_select(est_, ctx.t, ctx.k);
  }
  if (static_cast<double>(ctx.aoi_prev) > aoi_threshold(est_, ctx.k)) {
    return exploit_select(est_, ctx.k);
  }
  return dlts_select(est_, ctx.k, sample_);
}

void IidScheduler::decide_all(std::vector<int>& decisions) {
  std::iota(perm_.begin(), perm_.end(), 0);
  // Fisher-Yates on the shared stream; all sources read the same draw.
  for (int i = M_ - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm_[static_cast<std::size_t>(i)],
              perm_[static_cast<std::size_t>(pick(stream_))]);
  }
  decisions.assign(perm_.begin(), perm_.end());
}

}  // namespace aoib
