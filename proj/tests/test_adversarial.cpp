#include "threshmatch/adversarial.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "threshmatch/elicitation.hpp"
#include "threshmatch/mechanisms.hpp"
#include "threshmatch/oracle.hpp"

using namespace threshmatch;

TEST_CASE("max gap index prefers the smallest level on ties") {
  ThresholdVector geo = ThresholdVector::geometric(3.0, 4);
  CHECK(max_gap_index(geo) == 1);

  ThresholdVector skewed{{0.5, 0.01}};
  CHECK(max_gap_index(skewed) == 2);  // gaps are 2 and 50
}

TEST_CASE("max gap is at least the t-th root of 1/tau_t") {
  Rng rng(401);
  for (int round = 0; round < 200; ++round) {
    int t = 1 + static_cast<int>(rng.below(4));
    std::vector<double> taus(t);
    double prev = 1.0;
    for (int k = 0; k < t; ++k) {
      prev *= 0.2 + 0.7 * rng.unit();
      taus[k] = prev;
    }
    ThresholdVector tv{taus};
    int k = max_gap_index(tv);
    double gap = tv.tau(k - 1) / tv.tau(k);
    CHECK(gap >= std::pow(1.0 / tv.last(), 1.0 / t) - 1e-12);
  }
}

TEST_CASE("gap instance m drops below the boundary at exact multiples") {
  // delta = 4 geometric: (1 - 1/2) / (1/4) = 2 exactly, so m = 1.
  ThresholdVector taus = ThresholdVector::geometric(4.0, 2);
  CHECK(gap_m(taus, 1) == 1);
  // Slightly below the boundary keeps the floor.
  ThresholdVector loose{{0.21, 0.05}};
  // (1 - 0.105) / 0.21... k = 1: (1 - 0.5)/0.21 = 2.38 -> m = 2.
  CHECK(gap_m(loose, 1) == 2);
}

TEST_CASE("gap instance refuses impossible parameters") {
  ThresholdVector taus = ThresholdVector::geometric(4.0, 2);
  // k = t has no level left for the filler item.
  CHECK_THROWS_AS(gap_input_profile(taus, 2, 8), std::invalid_argument);
  // n too small: m = 1 needs n >= 3.
  CHECK_THROWS_AS(gap_input_profile(taus, 1, 2), std::invalid_argument);
  // Gap must exceed 2.
  ThresholdVector flat = ThresholdVector::geometric(1.5, 2);
  CHECK_THROWS_AS(gap_input_profile(flat, 1, 6), std::invalid_argument);
}

TEST_CASE("gap instance fixtures are unit-sum and closure-consistent") {
  for (double delta : {4.0, 8.0, 16.0}) {
    ThresholdVector taus = ThresholdVector::geometric(delta, 2);
    int k = max_gap_index(taus);
    CHECK(k == 1);
    int m = gap_m(taus, k);
    int n = m + 3;

    MechanismConfig config;
    config.t = 2;
    config.delta = delta;
    InputProfile profile = gap_input_profile(taus, k, n);
    Matching ft = run_ft(profile, config);
    GapInstance gap = gen_gap_instance(taus, k, n, matching_indicator(ft));

    CHECK(gap.m == m);
    CHECK(gap.k_prime == 2);
    CHECK(validate_profile(gap.utilities).empty());
    for (int i = 0; i < n; ++i) {
      double sum = 0;
      for (double v : gap.utilities.u[i]) sum += v;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(is_consistent(gap.utilities, gap.input, taus).ok);

    // Optimal welfare covers the (m+1) tau_{k-1} / 2 floor.
    double optimal = testoracle::brute_force_optimal_welfare(gap.utilities);
    CHECK(optimal >= (m + 1) * taus.tau(k - 1) / 2 - 1e-9);
  }
}

TEST_CASE("gap instance realized ratio clears its min{(m+1)/2, delta/2} bound") {
  for (double delta : {4.0, 8.0, 16.0}) {
    ThresholdVector taus = ThresholdVector::geometric(delta, 2);
    int k = max_gap_index(taus);
    int m = gap_m(taus, k);
    int n = m + 2;

    MechanismConfig config;
    config.t = 2;
    config.delta = delta;
    InputProfile profile = gap_input_profile(taus, k, n);

    for (bool randomized : {false, true}) {
      std::vector<std::vector<double>> p =
          randomized ? rt_distribution(profile, config)
                     : matching_indicator(run_ft(profile, config));
      GapInstance gap = gen_gap_instance(taus, k, n, p);
      double optimal = testoracle::brute_force_optimal_welfare(gap.utilities);
      double expected = 0;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) expected += p[i][a] * gap.utilities.u[i][a];
      double ratio = optimal / expected;
      double bound = std::min((m + 1) / 2.0, delta / 2.0);
      CHECK(ratio >= bound - 1e-6);
    }
  }
}

TEST_CASE("exact distortion on the gap instance clears the closed-form floor") {
  for (double delta : {4.0, 8.0}) {
    ThresholdVector taus = ThresholdVector::geometric(delta, 2);
    int k = max_gap_index(taus);
    int m = gap_m(taus, k);
    int n = m + 2;
    MechanismConfig config;
    config.t = 2;
    config.delta = delta;
    InputProfile profile = gap_input_profile(taus, k, n);
    auto p = matching_indicator(run_ft(profile, config));
    DistortionResult r = exact_distortion(p, profile, taus);
    double floor = 0.5 * (m + 1) * taus.tau(k - 1) /
                   (taus.tau(k - 1) + (m + 1) * taus.tau(k));
    REQUIRE_FALSE(r.unbounded);
    CHECK(r.distortion >= floor - 1e-9);
  }
}

TEST_CASE("deterministic empty-profile adversary zeroes the mechanism") {
  const int n = 5;
  // tau_t = 1/(n-1) exactly.
  ThresholdVector taus{{0.5, 1.0 / (n - 1)}};
  Matching a;
  a.assign = {2, 0, 4, 1, 3};
  UtilityProfile u = gen_empty_det_adversary(taus, n, a);

  CHECK(validate_profile(u).empty());
  CHECK(social_welfare(a, u) == doctest::Approx(0.0));
  Matching b;
  b.assign.assign(n, 0);
  for (int i = 0; i < n; ++i) b.assign[i] = a.assign[(i + 1) % n];
  b.validate_bijection();
  CHECK(social_welfare(b, u) == doctest::Approx(n * taus.last()).epsilon(1e-12));
  CHECK(is_consistent(u, empty_profile(n, 2), taus).ok);
}

TEST_CASE("deterministic empty-profile adversary drives f_t to unbounded distortion") {
  for (int n = 4; n <= 6; ++n) {
    double delta = std::pow(n - 1.0, 1.0 / 2);  // tau_2 = 1/(n-1)
    MechanismConfig config;
    config.t = 2;
    config.delta = delta;
    ThresholdVector taus = config.taus();
    REQUIRE(taus.last() >= 1.0 / (n - 1) - 1e-12);
    InputProfile input = empty_profile(n, 2);
    Matching ft = run_ft(input, config);
    DistortionResult r = exact_distortion(matching_indicator(ft), input, taus);
    CHECK(r.unbounded);
  }
}

TEST_CASE("randomized empty-profile adversary pins expected welfare at one") {
  const int n = 4;
  ThresholdVector taus{{0.5, 0.3}};  // tau_t = 0.3 > 1/4
  MechanismConfig config;
  config.t = 2;
  config.delta = 2.0;

  InputProfile input = empty_profile(n, 2);
  // Uniform distribution stands in for an arbitrary randomized mechanism.
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 1.0 / n));
  UtilityProfile u = gen_empty_rand_adversary(taus, n, p);

  CHECK(validate_profile(u).empty());
  CHECK(is_consistent(u, input, taus).ok);

  std::vector<int> all = {0, 1, 2, 3};
  MinProbMatching min_prob = min_probability_matching(p, all);
  Matching a_m;
  a_m.assign.assign(n, -1);
  for (const auto& [agent, item] : min_prob.pairs) a_m.assign[agent] = item;
  a_m.validate_bijection();
  CHECK(social_welfare(a_m, u) == doctest::Approx(n * taus.last()).epsilon(1e-12));

  double expected = 0;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) expected += p[i][a] * u.u[i][a];
  CHECK(expected <= 1.0 + 1e-9);
  CHECK(n * taus.last() / expected >= n * taus.last() - 1e-6);
}

TEST_CASE("empty-profile adversaries validate their preconditions") {
  ThresholdVector taus{{0.5, 0.1}};
  Matching a;
  a.assign = {0, 1, 2, 3};
  CHECK_THROWS_AS(gen_empty_det_adversary(taus, 4, a), std::invalid_argument);
  CHECK_THROWS_AS(gen_empty_rand_adversary(
                      taus, 4, std::vector<std::vector<double>>(4, std::vector<double>(4, 0.25))),
                  std::invalid_argument);
}
