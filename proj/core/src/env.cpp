#include "aoib/env.hpp"

#include <string>

namespace aoib {

int contested_channel_count(const SlotOutcome& outcome) {
  int count = 0;
  std::vector<int> seen;  // contested channels already counted
  for (std::size_t m = 0; m < outcome.chosen.size(); ++m) {
    if (!outcome.collided[m]) continue;
    int ch = outcome.chosen[m];
    bool counted = false;
    for (int c : seen) {
      if (c == ch) {
        counted = true;
        break;
      }
    }
    if (!counted) {
      seen.push_back(ch);
      ++count;
    }
  }
  return count;
}

SlotOutcome resolve_and_step(std::span<const int> decisions,
                             const ChannelTape& tape, std::int64_t t,
                             AoIState& aoi, RngEngine& collision_stream) {
  const int M = static_cast<int>(decisions.size());
  const int N = tape.channels();
  if (t < 1 || t > tape.horizon()) {
    throw IndexOutOfRange("slot " + std::to_string(t) + " outside tape horizon");
  }
  for (int m = 0; m < M; ++m) {
    if (decisions[static_cast<std::size_t>(m)] < 0 ||
        decisions[static_cast<std::size_t>(m)] >= N) {
      throw IndexOutOfRange("channel index " +
                            std::to_string(decisions[static_cast<std::size_t>(m)]) +
                            " outside [0," + std::to_string(N) + ")");
    }
  }

  SlotOutcome out;
  out.chosen.assign(decisions.begin(), decisions.end());
  out.acquired.assign(static_cast<std::size_t>(M), false);
  out.success.assign(static_cast<std::size_t>(M), false);
  out.collided.assign(static_cast<std::size_t>(M), false);

  // Group contenders per channel; channels visited in increasing order so
  // the winner draw sequence is reproducible.
  std::vector<std::vector<int>> contenders(static_cast<std::size_t>(N));
  for (int m = 0; m < M; ++m) {
    contenders[static_cast<std::size_t>(out.chosen[static_cast<std::size_t>(m)])]
        .push_back(m);
  }
  for (int n = 0; n < N; ++n) {
    const auto& group = contenders[static_cast<std::size_t>(n)];
    if (group.empty()) continue;
    int winner = group.front();
    if (group.size() >= 2) {
      std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
      winner = group[pick(collision_stream)];
      for (int m : group) out.collided[static_cast<std::size_t>(m)] = true;
    }
    out.acquired[static_cast<std::size_t>(winner)] = true;
    out.success[static_cast<std::size_t>(winner)] = tape.at(n, t);
  }

  for (int m = 0; m < M; ++m) {
    auto& age = aoi.a[static_cast<std::size_t>(m)];
    age = out.success[static_cast<std::size_t>(m)] ? 1 : age + 1;
  }
  return out;
}

}  // namespace aoib
