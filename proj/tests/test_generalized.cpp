#include "threshmatch/generalized.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "threshmatch/elicitation.hpp"
#include "threshmatch/sampling.hpp"

using namespace threshmatch;

TEST_CASE("g_t on empty approvals returns a maximal zero-value allocation") {
  GeneralizedInstance inst;
  inst.n = 2;
  inst.m = 2;
  inst.capacities = {1, 2};
  inst.supplies = {2, 1};
  inst.marginals = {{{0.4}, {0.6}}, {{0.25, 0.25}, {0.5}}};
  inst.validate();

  MechanismConfig config;
  config.t = 1;
  config.delta = gt_default_delta(inst.total(), 1);
  InputProfile empty;
  empty.kind = ProfileKind::Generalized;
  empty.t = 1;
  empty.sets.assign(2, std::vector<std::vector<ApprovalMember>>(1));

  GtResult result = run_gt(empty, inst, config);
  CHECK(result.allocation.maximal);
  CHECK(result.allocation.total() == inst.assignable());
  CHECK(result.v_welfare == doctest::Approx(0.0));
}

TEST_CASE("g_t specializes to f_t on square unit instances") {
  Rng rng(211);
  for (int round = 0; round < 60; ++round) {
    int n = 2 + static_cast<int>(rng.below(5));
    int t = 1 + static_cast<int>(rng.below(3));
    UtilityProfile profile = random_unit_sum_profile(n, rng);
    GeneralizedInstance inst = unit_generalized_instance(profile);

    MechanismConfig config;
    config.t = t;
    config.delta = ft_default_delta(n, t);  // 2T = 2n on unit instances
    ThresholdVector taus = config.taus();

    InputProfile one_sided = elicit(profile, taus);
    Matching ft = run_ft(one_sided, config);
    double ft_weight = matching_graph_weight(ft, one_sided, taus);

    InputProfile gen = elicit(inst, taus);
    GtResult gt = run_gt(gen, inst, config);
    CHECK(gt.v_welfare == doctest::Approx(ft_weight).epsilon(1e-9));
    CHECK(gt.allocation.maximal);
  }
}

TEST_CASE("g_t matches exhaustive value maximization on a tiny asymmetric instance") {
  GeneralizedInstance inst;
  inst.n = 2;
  inst.m = 2;
  inst.capacities = {2, 1};
  inst.supplies = {2, 1};
  inst.marginals = {{{0.5, 0.2}, {0.1}}, {{0.55}, {0.45}}};
  inst.validate();

  MechanismConfig config;
  config.t = 2;
  config.delta = gt_default_delta(inst.total(), 2);
  ThresholdVector taus = config.taus();
  InputProfile input = elicit(inst, taus);
  GtResult gt = run_gt(input, inst, config);

  auto values = values_from_profile(input, taus, inst);
  double expected =
      testoracle::brute_force_max_value_welfare(inst.capacities, inst.supplies, values);
  CHECK(gt.v_welfare == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("g_t rejects value matrices that increase in the copy index") {
  GeneralizedInstance inst;
  inst.n = 1;
  inst.m = 1;
  inst.capacities = {2};
  inst.supplies = {2};
  // Copy 1 falls below tau_1 = 1/8 and stays unlisted while copy 2 is
  // approved, so the derived values are (0, tau_1): increasing.
  inst.marginals = {{{0.1, 0.9}}};
  inst.validate();

  MechanismConfig config;
  config.t = 1;
  config.delta = gt_default_delta(inst.total(), 1);
  InputProfile input = elicit(inst, config.taus());
  CHECK_THROWS_WITH_AS(run_gt(input, inst, config),
                       "derived values increase in the copy index at (agent 0, item 0, copy 2)",
                       std::invalid_argument);
}

TEST_CASE("copy limits forbid extra copies through the value matrix") {
  GeneralizedInstance inst;
  inst.n = 1;
  inst.m = 1;
  inst.capacities = {2};
  inst.supplies = {2};
  inst.marginals = {{{0.6, 0.4}}};
  inst.copy_limits = {{1}};
  inst.validate();

  MechanismConfig config;
  config.t = 1;
  config.delta = 4.0;
  InputProfile input = elicit(inst, config.taus());
  auto values = values_from_profile(input, config.taus(), inst);
  CHECK(std::isinf(values[0][0][1]));
  CHECK(values[0][0][1] < 0);

  GtResult gt = run_gt(input, inst, config);
  CHECK(gt.allocation.x[0][0] == 1);  // second copy is out of reach
}

TEST_CASE("welfare lower bound formula") {
  ThresholdVector taus = ThresholdVector::geometric(2.0, 2);
  CHECK(welfare_lower_bound_gt(4 * taus.last(), 4, taus, 2.0) == doctest::Approx(0.0));

  // With delta = (2T)^(1/t), T tau_t = 1/2: bound at s* = 1 is delta^-1 / 2.
  long long T = 6;
  int t = 2;
  double delta = gt_default_delta(T, t);
  ThresholdVector geo = ThresholdVector::geometric(delta, t);
  CHECK(T * geo.last() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(welfare_lower_bound_gt(1.0, T, geo, delta) ==
        doctest::Approx(0.5 / delta).epsilon(1e-12));
}

TEST_CASE("g_t welfare clears the lower bound on random instances") {
  Rng rng(223);
  for (int round = 0; round < 50; ++round) {
    GeneralizedInstance inst = random_generalized_instance(
        1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)), 3, 7, rng);
    int t = 1 + static_cast<int>(rng.below(2));
    MechanismConfig config;
    config.t = t;
    config.delta = gt_default_delta(inst.total(), t);
    ThresholdVector taus = config.taus();
    InputProfile input = elicit(inst, taus);
    GtResult gt = run_gt(input, inst, config);

    double s_star = testoracle::brute_force_max_value_welfare(inst.capacities, inst.supplies,
                                                              inst.marginals);
    double bound = welfare_lower_bound_gt(s_star, inst.total(), taus, config.delta);
    CHECK(allocation_welfare(gt.allocation, inst) >= bound - 1e-9);
  }
}

TEST_CASE("grt random-part pair probability") {
  CHECK(grt_random_pair_probability(3, 3) == doctest::Approx(1.0 / 3));
  CHECK(grt_random_pair_probability(2, 3) == doctest::Approx(1.0 / 3));
  CHECK(grt_random_pair_probability(5, 2) == doctest::Approx(1.0 / 5));
}

TEST_CASE("grt sampling matches the exact pair probability") {
  GeneralizedInstance inst;
  inst.n = 2;
  inst.m = 3;
  inst.capacities = {2, 2};
  inst.supplies = {2, 1, 1};
  inst.marginals = {{{0.3, 0.1}, {0.3}, {0.3}}, {{0.2, 0.2}, {0.3}, {0.3}}};
  inst.validate();

  MechanismConfig config;
  config.t = 1;
  config.delta = grt_default_delta(inst.total(), 1);
  config.mode = MechanismMode::Randomized;
  InputProfile input = elicit(inst, config.taus());

  const int samples = 100000;
  Rng rng(271);
  std::vector<std::vector<double>> matched(inst.n, std::vector<double>(inst.m, 0.0));
  int random_branch = 0;
  GtResult gt = run_gt(input, inst, config);
  for (int s = 0; s < samples; ++s) {
    Allocation alloc = run_grt(input, inst, config, rng);
    bool is_gt = alloc.x == gt.allocation.x;
    if (!is_gt) {
      ++random_branch;
      for (int i = 0; i < inst.n; ++i)
        for (int a = 0; a < inst.m; ++a)
          if (alloc.x[i][a] > 0) matched[i][a] += 1.0;
    }
  }
  // The random branch fires about half the time, and within it each pair is
  // matched with probability 1/max(n, m) = 1/3.
  CHECK(std::fabs(random_branch / static_cast<double>(samples) - 0.5) < 0.02);
  for (int i = 0; i < inst.n; ++i)
    for (int a = 0; a < inst.m; ++a) {
      double rate = matched[i][a] / random_branch;
      CHECK(std::fabs(rate - 1.0 / 3) < 0.02);
    }
}

TEST_CASE("grt outputs always satisfy the instance constraints") {
  Rng rng(281);
  for (int round = 0; round < 40; ++round) {
    GeneralizedInstance inst = random_generalized_instance(
        2 + static_cast<int>(rng.below(3)), 2 + static_cast<int>(rng.below(3)), 3, 8, rng);
    MechanismConfig config;
    config.t = 1 + static_cast<int>(rng.below(2));
    config.delta = grt_default_delta(inst.total(), config.t);
    config.mode = MechanismMode::Randomized;
    InputProfile input = elicit(inst, config.taus());
    Allocation alloc = run_grt(input, inst, config, rng);
    // Feasibility: allocation_welfare throws on any violation.
    CHECK_NOTHROW(allocation_welfare(alloc, inst));
  }
}
