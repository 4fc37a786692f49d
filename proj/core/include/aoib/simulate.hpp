#pragma once

#include <cstdint>
#include <memory>

#include "aoib/env.hpp"
#include "aoib/instance.hpp"
#include "aoib/metrics.hpp"
#include "aoib/policies.hpp"
#include "aoib/policy_kind.hpp"
#include "aoib/rng.hpp"
#include "aoib/tape.hpp"

namespace aoib {

/// Randomness wiring for one (iteration, policy) run. The tape spec is the
/// only part shared across policies of an iteration; collision and sampling
/// streams restart identically per run so that changing one policy never
/// perturbs another's draws.
struct RunStreams {
  std::uint64_t master_seed = 0;
  std::uint64_t iteration_index = 0;
  PolicyKind policy = PolicyKind::OracleRR;

  RngEngine collision_stream() const;
  RngEngine sampling_stream(int m) const;
  RngEngine switch_stream(int m) const;
  RngEngine shared_permutation_stream() const;
};

/// Builds the per-source state machine for one of the seven per-source
/// policies (everything except IID, which is drawn jointly).
std::unique_ptr<SourcePolicy> make_source_policy(PolicyKind kind,
                                                 const ProblemInstance& instance,
                                                 int m, const RunStreams& streams,
                                                 HybridMnRule hybrid_rule);

/// Runs one policy over the tape and records the full trace. Sources run
/// strictly slot by slot: decide all, resolve the slot, observe own outcome.
RunTrace simulate_run(const ProblemInstance& instance, const ChannelTape& tape,
                      PolicyKind kind, const RunStreams& streams,
                      HybridMnRule hybrid_rule = HybridMnRule::ProductMN);

}  // namespace aoib
