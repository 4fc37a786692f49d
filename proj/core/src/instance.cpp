#include "aoib/instance.hpp"

#include <algorithm>
#include <numeric>

namespace aoib {

double ProblemInstance::top_m_mean() const {
  double sum = std::accumulate(mu.begin(), mu.begin() + M, 0.0);
  return sum / static_cast<double>(M);
}

ProblemInstance validate_instance(int M, int N, std::vector<double> mu) {
  if (M < 1) {
    throw Empty("source count M must be >= 1, got " + std::to_string(M));
  }
  if (N < M) {
    throw TooFewChannels("need N >= M channels, got N=" + std::to_string(N) +
                         " M=" + std::to_string(M));
  }
  if (static_cast<int>(mu.size()) != N) {
    throw ValidationError("expected " + std::to_string(N) +
                          " probabilities, got " + std::to_string(mu.size()));
  }
  for (double p : mu) {
    if (!(p > 0.0 && p < 1.0)) {
      throw OutOfRange("channel success probability " + std::to_string(p) +
                       " outside (0,1)");
    }
  }

  std::sort(mu.begin(), mu.end(), std::greater<>());
  for (int i = 0; i + 1 < N; ++i) {
    if (mu[i] == mu[i + 1]) {
      throw NonStrictOrder("duplicate channel probability " +
                           std::to_string(mu[i]));
    }
  }

  ProblemInstance inst;
  inst.M = M;
  inst.N = N;
  inst.mu = std::move(mu);
  inst.mu_min = inst.mu.back();
  if (M >= 2) {
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < M; ++i) {
      gap = std::min(gap, inst.mu[i] - inst.mu[i + 1]);
    }
    inst.delta = gap;
  }
  return inst;
}

std::vector<double> equidistant_mu(double mu1, double delta, int N) {
  std::vector<double> mu(static_cast<std::size_t>(std::max(N, 0)));
  for (int i = 0; i < N; ++i) {
    mu[static_cast<std::size_t>(i)] = mu1 - static_cast<double>(i) * delta;
  }
  return mu;
}

}  // namespace aoib
