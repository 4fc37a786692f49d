#include <algorithm>
#include <cmath>

#include "aoib/instance.hpp"
#include "aoib/rng.hpp"
#include "doctest.h"

using namespace aoib;

TEST_SUITE_BEGIN("core");

TEST_CASE("validate_instance: reference instance") {
  auto inst = validate_instance(2, 4, {0.8, 0.75, 0.7, 0.65});
  CHECK(inst.M == 2);
  CHECK(inst.N == 4);
  CHECK(inst.delta == doctest::Approx(0.05));
  CHECK(inst.mu_min == doctest::Approx(0.65));
  CHECK(inst.top_m_mean() == doctest::Approx(0.775));
}

TEST_CASE("validate_instance: single source, single channel") {
  auto inst = validate_instance(1, 1, {0.5});
  CHECK(std::isinf(inst.delta));
  CHECK(inst.mu_min == doctest::Approx(0.5));
}

TEST_CASE("validate_instance: rejections") {
  CHECK_THROWS_AS(validate_instance(2, 2, {0.5, 0.5}), NonStrictOrder);
  CHECK_THROWS_AS(validate_instance(1, 1, {1.0}), OutOfRange);
  CHECK_THROWS_AS(validate_instance(1, 2, {0.5, 0.0}), OutOfRange);
  CHECK_THROWS_AS(validate_instance(3, 2, {0.5, 0.4}), TooFewChannels);
  CHECK_THROWS_AS(validate_instance(0, 2, {0.5, 0.4}), Empty);
  CHECK_THROWS_AS(validate_instance(1, 2, {0.5}), ValidationError);
}

TEST_CASE("validate_instance: sorting is a permutation") {
  RngEngine g(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 2 + static_cast<int>(g() % 6);
    std::vector<double> mu;
    for (int i = 0; i < N; ++i) mu.push_back(0.05 + 0.9 * uniform01(g));
    std::sort(mu.begin(), mu.end());
    if (std::adjacent_find(mu.begin(), mu.end()) != mu.end()) continue;

    std::vector<double> shuffled = mu;
    for (int i = N - 1; i > 0; --i) {
      std::swap(shuffled[static_cast<std::size_t>(i)], shuffled[g() % (static_cast<std::size_t>(i) + 1)]);
    }
    auto inst = validate_instance(1, N, shuffled);

    std::vector<double> sorted_back = inst.mu;
    std::sort(sorted_back.begin(), sorted_back.end());
    CHECK(sorted_back == mu);
    CHECK(std::is_sorted(inst.mu.begin(), inst.mu.end(), std::greater<>()));
  }
}

TEST_CASE("validate_instance: stored delta and mu_min match recomputation") {
  RngEngine g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 2 + static_cast<int>(g() % 6);
    const int M = 2 + static_cast<int>(g() % static_cast<std::uint64_t>(N - 1));
    std::vector<double> mu;
    for (int i = 0; i < N; ++i) mu.push_back(0.05 + 0.9 * uniform01(g));
    ProblemInstance inst;
    try {
      inst = validate_instance(M, N, mu);
    } catch (const NonStrictOrder&) {
      continue;
    }
    double delta = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < M; ++i) delta = std::min(delta, inst.mu[static_cast<std::size_t>(i)] - inst.mu[static_cast<std::size_t>(i) + 1]);
    CHECK(inst.delta == doctest::Approx(delta));
    CHECK(inst.mu_min == doctest::Approx(*std::min_element(inst.mu.begin(), inst.mu.end())));
  }
}

TEST_CASE("equidistant_mu") {
  auto mu = equidistant_mu(0.9, 0.1, 5);
  REQUIRE(mu.size() == 5);
  CHECK(mu[0] == doctest::Approx(0.9));
  CHECK(mu[4] == doctest::Approx(0.5));
}

TEST_CASE("derive_stream: same spec reproduces the draw sequence") {
  RngStreamSpec spec{123456789ULL, 42, StreamRole::ChannelTape};
  RngEngine a = derive_stream(spec);
  RngEngine b = derive_stream(spec);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
}

TEST_CASE("derive_stream: distinct triples give distinct sequences") {
  RngStreamSpec spec{1, 0, StreamRole::ChannelTape};
  RngEngine base = derive_stream(spec);

  RngEngine other_role = derive_stream({1, 0, StreamRole::CollisionResolution});
  RngEngine other_iter = derive_stream({1, 1, StreamRole::ChannelTape});
  RngEngine other_salt = derive_stream(spec, 1);

  auto differs = [&](RngEngine& x) {
    RngEngine fresh = derive_stream(spec);
    for (int i = 0; i < 16; ++i) {
      if (fresh() != x()) return true;
    }
    return false;
  };
  CHECK(differs(other_role));
  CHECK(differs(other_iter));
  CHECK(differs(other_salt));
  (void)base;
}

TEST_SUITE_END();
