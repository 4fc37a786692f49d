#include "aoib/simulate.hpp"

namespace aoib {
namespace {

constexpr std::uint64_t kSwitchBit = 1ULL << 16;
constexpr std::uint64_t kSharedPermSalt = ~0ULL;

std::uint64_t run_salt(PolicyKind policy, int m) {
  return (static_cast<std::uint64_t>(policy) << 8) |
         static_cast<std::uint64_t>(m);
}

}  // namespace

RngEngine RunStreams::collision_stream() const {
  return derive_stream({master_seed, iteration_index, StreamRole::CollisionResolution});
}

RngEngine RunStreams::sampling_stream(int m) const {
  return derive_stream({master_seed, iteration_index, StreamRole::PolicySampling},
                       run_salt(policy, m));
}

RngEngine RunStreams::switch_stream(int m) const {
  return derive_stream({master_seed, iteration_index, StreamRole::PolicySampling},
                       run_salt(policy, m) | kSwitchBit);
}

RngEngine RunStreams::shared_permutation_stream() const {
  return derive_stream({master_seed, iteration_index, StreamRole::PolicySampling},
                       kSharedPermSalt);
}

std::unique_ptr<SourcePolicy> make_source_policy(PolicyKind kind,
                                                 const ProblemInstance& instance,
                                                 int m, const RunStreams& streams,
                                                 HybridMnRule hybrid_rule) {
  const int N = instance.N;
  const double mn =
      hybrid_mn_factor(hybrid_rule, instance.M, instance.N, m);
  switch (kind) {
    case PolicyKind::OracleRR:
      return std::make_unique<OracleRrPolicy>();
    case PolicyKind::DLF:
      return std::make_unique<DlfPolicy>(N);
    case PolicyKind::DLTS:
      return std::make_unique<DltsPolicy>(N, streams.sampling_stream(m));
    case PolicyKind::DLH:
      return std::make_unique<DlhPolicy>(N, mn, streams.switch_stream(m),
                                         streams.sampling_stream(m));
    case PolicyKind::DLF_AA:
      return std::make_unique<DlfAaPolicy>(N);
    case PolicyKind::DLTS_AA:
      return std::make_unique<DltsAaPolicy>(N, streams.sampling_stream(m));
    case PolicyKind::DLH_AA:
      return std::make_unique<DlhAaPolicy>(N, mn, streams.switch_stream(m),
                                           streams.sampling_stream(m));
    case PolicyKind::IID:
      throw std::logic_error("IID decides jointly, not per source");
  }
  throw std::logic_error("unknown policy kind");
}

RunTrace simulate_run(const ProblemInstance& instance, const ChannelTape& tape,
                      PolicyKind kind, const RunStreams& streams,
                      HybridMnRule hybrid_rule) {
  const int M = instance.M;
  const std::int64_t T = tape.horizon();

  RunTrace trace;
  trace.policy = kind;
  trace.M = M;
  trace.N = instance.N;
  trace.T = T;
  trace.aoi_series.resize(static_cast<std::size_t>(M) * static_cast<std::size_t>(T));
  trace.pulls.assign(static_cast<std::size_t>(M) * static_cast<std::size_t>(instance.N), 0);
  trace.per_source_collisions.assign(static_cast<std::size_t>(M), 0);

  std::vector<std::unique_ptr<SourcePolicy>> sources;
  std::unique_ptr<IidScheduler> iid;
  if (kind == PolicyKind::IID) {
    iid = std::make_unique<IidScheduler>(M, streams.shared_permutation_stream());
  } else {
    sources.reserve(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
      sources.push_back(make_source_policy(kind, instance, m, streams, hybrid_rule));
    }
  }

  AoIState aoi(M);
  RngEngine collision = streams.collision_stream();
  std::vector<int> decisions(static_cast<std::size_t>(M));

  for (std::int64_t t = 1; t <= T; ++t) {
    // The recorded age of slot t is the value the slot is entered with.
    for (int m = 0; m < M; ++m) {
      trace.aoi_series[static_cast<std::size_t>(m) * static_cast<std::size_t>(T) +
                       static_cast<std::size_t>(t - 1)] =
          static_cast<std::uint32_t>(aoi.a[static_cast<std::size_t>(m)]);
    }

    if (iid) {
      iid->decide_all(decisions);
    } else {
      for (int m = 0; m < M; ++m) {
        decisions[static_cast<std::size_t>(m)] = sources[static_cast<std::size_t>(m)]
            ->decide(make_context(m, t, M, aoi.a[static_cast<std::size_t>(m)]));
      }
    }

    SlotOutcome outcome = resolve_and_step(decisions, tape, t, aoi, collision);

    for (int m = 0; m < M; ++m) {
      trace.pulls[static_cast<std::size_t>(m) * static_cast<std::size_t>(instance.N) +
                  static_cast<std::size_t>(decisions[static_cast<std::size_t>(m)])] += 1;
      if (outcome.collided[static_cast<std::size_t>(m)]) {
        trace.per_source_collisions[static_cast<std::size_t>(m)] += 1;
      }
      if (!iid) {
        sources[static_cast<std::size_t>(m)]->observe(
            decisions[static_cast<std::size_t>(m)],
            outcome.acquired[static_cast<std::size_t>(m)],
            outcome.success[static_cast<std::size_t>(m)]);
      }
    }
    trace.collisions += contested_channel_count(outcome);
  }
  return trace;
}

}  // namespace aoib
