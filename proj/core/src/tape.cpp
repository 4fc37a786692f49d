#include "aoib/tape.hpp"

namespace aoib {

ChannelTape make_tape(std::span<const double> mu, std::int64_t T,
                      RngEngine& stream) {
  ChannelTape tape(static_cast<int>(mu.size()), T);
  for (int n = 0; n < static_cast<int>(mu.size()); ++n) {
    double p = mu[static_cast<std::size_t>(n)];
    for (std::int64_t t = 1; t <= T; ++t) {
      tape.set(n, t, bernoulli(stream, p));
    }
  }
  return tape;
}

ChannelTape make_tape(const ProblemInstance& instance, std::int64_t T,
                      RngEngine& stream) {
  return make_tape(std::span<const double>(instance.mu), T, stream);
}

}  // namespace aoib
