#include "aoib/rng.hpp"

namespace aoib {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngEngine derive_stream(const RngStreamSpec& spec) {
  return derive_stream(spec, 0);
}

RngEngine derive_stream(const RngStreamSpec& spec, std::uint64_t salt) {
  std::uint64_t s = splitmix64(spec.master_seed);
  s = splitmix64(s ^ spec.iteration_index);
  s = splitmix64(s ^ (static_cast<std::uint64_t>(spec.role) << 32));
  s = splitmix64(s ^ salt);
  return RngEngine(s);
}

double sample_beta(RngEngine& g, double alpha, double beta) {
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  double x = ga(g);
  double y = gb(g);
  return x / (x + y);
}

}  // namespace aoib
