#pragma once

#include <cstdint>
#include <random>

namespace aoib {

using RngEngine = std::mt19937_64;

/// Which consumer of randomness a stream feeds. Keeping the roles on
/// separate streams means, e.g., that the collision winner sequence of an
/// iteration is identical no matter which policy is being simulated.
enum class StreamRole : std::uint64_t {
  ChannelTape = 1,
  CollisionResolution = 2,
  PolicySampling = 3,
};

/// Identifies one deterministic random stream. The same triple always
/// reproduces the same draw sequence; distinct triples give streams that are
/// independent for all practical purposes.
struct RngStreamSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t iteration_index = 0;
  StreamRole role = StreamRole::ChannelTape;
};

/// Derives the engine for a stream spec.
RngEngine derive_stream(const RngStreamSpec& spec);

/// Same, with an extra salt word for sub-streams (per policy, per source).
RngEngine derive_stream(const RngStreamSpec& spec, std::uint64_t salt);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(RngEngine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// One Bernoulli(p) draw.
inline bool bernoulli(RngEngine& g, double p) { return uniform01(g) < p; }

/// Beta(alpha, beta) sample via the two-gamma construction.
double sample_beta(RngEngine& g, double alpha, double beta);

}  // namespace aoib
