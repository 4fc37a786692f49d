#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoib/instance.hpp"
#include "aoib/rng.hpp"

namespace aoib {

/// Pre-drawn per-(channel, slot) Bernoulli outcomes. Drawing the whole
/// horizon up front lets the oracle run and every candidate run of an
/// iteration observe the same channel randomness (coupled runs).
class ChannelTape {
 public:
  ChannelTape(int N, std::int64_t T) : N_(N), T_(T), bits_(static_cast<std::size_t>(N) * static_cast<std::size_t>(T)) {}

  int channels() const { return N_; }
  std::int64_t horizon() const { return T_; }

  /// Outcome for channel n (0-based) in slot t (1-based).
  bool at(int n, std::int64_t t) const {
    return bits_[static_cast<std::size_t>(n) * static_cast<std::size_t>(T_) +
                 static_cast<std::size_t>(t - 1)] != 0;
  }

  void set(int n, std::int64_t t, bool v) {
    bits_[static_cast<std::size_t>(n) * static_cast<std::size_t>(T_) +
          static_cast<std::size_t>(t - 1)] = v ? 1 : 0;
  }

 private:
  int N_;
  std::int64_t T_;
  std::vector<std::uint8_t> bits_;
};

/// Draws an N x T tape with entry (n, t) ~ Bernoulli(mu[n]), independent
/// across channels and slots.
ChannelTape make_tape(const ProblemInstance& instance, std::int64_t T,
                      RngEngine& stream);

/// Same, from a raw probability vector (no instance invariants involved).
ChannelTape make_tape(std::span<const double> mu, std::int64_t T,
                      RngEngine& stream);

}  // namespace aoib
