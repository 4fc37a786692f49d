#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "aoib/env.hpp"
#include "aoib/estimator.hpp"
#include "aoib/rng.hpp"

namespace aoib {

/// DLF was asked to rank channels while some channel still has zero
/// acquired plays after its initialization sweep should have covered it.
struct Uninitialized : std::logic_error {
  using std::logic_error::logic_error;
};

/// Everything a source is allowed to see when deciding: its own identity,
/// the slot, its fairness rank for this slot, and its own current age.
/// Decisions never read another source's state.
struct PolicyContext {
  int m = 0;                 // own source index (0-based)
  std::int64_t t = 1;        // current slot (1-based)
  int k = 1;                 // fairness rank in [1, M]
  std::int64_t aoi_prev = 1; // own age entering this slot (AA policies only)
};

inline PolicyContext make_context(int m, std::int64_t t, int M,
                                  std::int64_t aoi_prev) {
  return PolicyContext{m, t, fairness_rank(m, t, M), aoi_prev};
}

// ---------------------------------------------------------------------------
// Decision rules (pure functions of local state)
// ---------------------------------------------------------------------------

/// Initialization sweep: slot t in [1, N] sends source m to channel
/// ((m+1+t) mod N), so each source touches every channel exactly once and
/// no two sources ever meet (indices are distinct residues since M <= N).
inline int dlf_init_channel(int m, std::int64_t t, int N) {
  return static_cast<int>((static_cast<std::int64_t>(m) + 1 + t) % N);
}

/// DLF selection: take the k channels with the largest optimistic indices
/// (equal indices rank lower-channel first), then play the least-explored of
/// them, i.e. the one with the smallest pessimistic index. Ties on the
/// pessimistic index resolve to the last-ranked tied candidate, so under a
/// full tie rank k plays channel k and tied sources stay collision-free.
int dlf_select(const EstimatorState& est, std::int64_t t, int k);

/// Thompson sampling selection: draw one Beta posterior sample per channel
/// and play the channel with the k-th largest sample.
int dlts_select(const EstimatorState& est, int k, RngEngine& sample_stream);

/// Age threshold shared by the AA variants: the k-th smallest posterior
/// mean-inverse (alpha+beta)/alpha across channels. Roughly the age a source
/// would sustain on its k-th best channel.
double aoi_threshold(const EstimatorState& est, int k);

/// Exploitation: the channel with the k-th largest empirical success rate.
int exploit_select(const EstimatorState& est, int k);

// ---------------------------------------------------------------------------
// Hybrid switch
// ---------------------------------------------------------------------------

/// How the hybrid policies scale their switch probability.
enum class HybridMnRule {
  ProductMN,     // factor = M * N (the default)
  SourceTimesN,  // factor = (m+1) * N, per-source
};

double hybrid_mn_factor(HybridMnRule rule, int M, int N, int m);

/// One per-slot switch draw: DLF with probability min{1, factor * ln t / t},
/// Thompson sampling otherwise.
struct HybridSwitch {
  double p_dlf = 0.0;
  bool use_dlf = false;
};

HybridSwitch draw_hybrid_switch(double mn_factor, std::int64_t t,
                                RngEngine& switch_stream);

// ---------------------------------------------------------------------------
// Per-source policy state machines
// ---------------------------------------------------------------------------

class SourcePolicy {
 public:
  virtual ~SourcePolicy() = default;
  virtual int decide(const PolicyContext& ctx) = 0;
  virtual void observe(int /*chosen*/, bool /*acquired*/, bool /*success*/) {}
};

/// Shared base for policies that learn from acquired plays.
class LearningPolicy : public SourcePolicy {
 public:
  explicit LearningPolicy(int N) : est_(N) {}

  void observe(int chosen, bool acquired, bool success) override {
    est_.observe(chosen, acquired, success);
  }

  const EstimatorState& estimator() const { return est_; }

 protected:
  /// Init sweep must have touched every channel before DLF may rank them.
  void require_initialized(std::int64_t t) const;

  EstimatorState est_;
};

class OracleRrPolicy final : public SourcePolicy {
 public:
  int decide(const PolicyContext& ctx) override { return ctx.k - 1; }
};

class DlfPolicy final : public LearningPolicy {
 public:
  explicit DlfPolicy(int N) : LearningPolicy(N) {}
  int decide(const PolicyContext& ctx) override;
};

class DltsPolicy final : public LearningPolicy {
 public:
  DltsPolicy(int N, RngEngine sample_stream)
      : LearningPolicy(N), sample_(std::move(sample_stream)) {}
  int decide(const PolicyContext& ctx) override;

 private:
  RngEngine sample_;
};

class DlhPolicy final : public LearningPolicy {
 public:
  DlhPolicy(int N, double mn_factor, RngEngine switch_stream,
            RngEngine sample_stream)
      : LearningPolicy(N),
        mn_factor_(mn_factor),
        switch_(std::move(switch_stream)),
        sample_(std::move(sample_stream)) {}
  int decide(const PolicyContext& ctx) override;

 private:
  double mn_factor_;
  RngEngine switch_;
  RngEngine sample_;
};

class DlfAaPolicy final : public LearningPolicy {
 public:
  explicit DlfAaPolicy(int N) : LearningPolicy(N) {}
  int decide(const PolicyContext& ctx) override;
};

class DltsAaPolicy final : public LearningPolicy {
 public:
  DltsAaPolicy(int N, RngEngine sample_stream)
      : LearningPolicy(N), sample_(std::move(sample_stream)) {}
  int decide(const PolicyContext& ctx) override;

 private:
  RngEngine sample_;
};

class DlhAaPolicy final : public LearningPolicy {
 public:
  DlhAaPolicy(int N, double mn_factor, RngEngine switch_stream,
              RngEngine sample_stream)
      : LearningPolicy(N),
        mn_factor_(mn_factor),
        switch_(std::move(switch_stream)),
        sample_(std::move(sample_stream)) {}
  int decide(const PolicyContext& ctx) override;

 private:
  double mn_factor_;
  RngEngine switch_;
  RngEngine sample_;
};

/// The IID reference policy is defined jointly: one fresh uniform
/// permutation of the best-M channels per slot, shared by all sources.
class IidScheduler {
 public:
  IidScheduler(int M, RngEngine perm_stream)
      : M_(M), perm_(static_cast<std::size_t>(M)), stream_(std::move(perm_stream)) {}

  /// Fills `decisions[m]` with the m-th element of a fresh permutation.
  void decide_all(std::vector<int>& decisions);

 private:
  int M_;
  std::vector<int> perm_;
  RngEngine stream_;
};

}  // namespace aoib
