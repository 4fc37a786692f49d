#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aoib/instance.hpp"
#include "aoib/rng.hpp"
#include "aoib/tape.hpp"

namespace aoib {

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Per-source age-of-information at the current slot boundary. Ages start
/// at 1 and either reset to 1 (successful update) or grow by exactly 1.
struct AoIState {
  std::vector<std::int64_t> a;

  explicit AoIState(int M = 0) : a(static_cast<std::size_t>(M), 1) {}
};

/// What happened to each source in one slot.
struct SlotOutcome {
  std::vector<int> chosen;     // channel index per source (0-based)
  std::vector<bool> acquired;  // won (or was alone on) the chosen channel
  std::vector<bool> success;   // acquired and the tape bit was 1
  std::vector<bool> collided;  // >= 2 sources chose the same channel
};

/// Number of channels contested by two or more sources in this slot.
int contested_channel_count(const SlotOutcome& outcome);

/// Resolves one slot: collision winners, tape outcomes, AoI update.
///
/// Each channel chosen by k >= 2 sources goes to one winner drawn uniformly
/// from the contenders via `collision_stream` (contested channels are
/// processed in increasing channel order). Winners and solo choosers acquire
/// the channel and succeed iff the tape bit for (channel, t) is set; losers
/// observe nothing. Ages then reset to 1 on success and grow by 1 otherwise.
SlotOutcome resolve_and_step(std::span<const int> decisions,
                             const ChannelTape& tape, std::int64_t t,
                             AoIState& aoi, RngEngine& collision_stream);

/// Fairness index for source m (0-based) in slot t: the 1-based rank in
/// [1, M] this source targets. Cycles through every rank once per M slots,
/// with no two sources sharing a rank in any slot.
inline int fairness_rank(int m, std::int64_t t, int M) {
  return static_cast<int>((static_cast<std::int64_t>(m) + 1 + t) % M) + 1;
}

/// Round-robin oracle: source m plays the channel whose quality rank equals
/// its fairness index. Collision-free and confined to the best-M channels.
/// Returns a 0-based channel index.
inline int oracle_schedule(const ProblemInstance& instance, int m,
                           std::int64_t t) {
  return fairness_rank(m, t, instance.M) - 1;
}

}  // namespace aoib
