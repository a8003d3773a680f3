#include "threshmatch/elicitation.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "threshmatch/rng.hpp"
#include "threshmatch/sampling.hpp"

using namespace threshmatch;

namespace {

std::vector<int> items_of(const InputProfile& input, int agent, int level) {
  std::vector<int> out;
  for (const auto& mem : input.sets[agent][level - 1]) out.push_back(mem.item);
  return out;
}

}  // namespace

TEST_CASE("elicitation classifies half-open utility bands") {
  ThresholdVector taus{{0.5, 0.25}};

  UtilityProfile p;
  p.u = {{1.0, 0.0, 0.0}, {0.5, 0.25, 0.25}, {0.3, 0.3, 0.4}};
  InputProfile input = elicit(p, taus);

  // Utility 1 lands in the top band.
  CHECK(items_of(input, 0, 1) == std::vector<int>{0});
  CHECK(items_of(input, 0, 2).empty());
  // Utility exactly tau_1 drops to band 2; exactly tau_t stays unlisted.
  CHECK(items_of(input, 1, 1).empty());
  CHECK(items_of(input, 1, 2) == std::vector<int>{0});
  // Everything in (tau_2, tau_1] is band 2.
  CHECK(items_of(input, 2, 2) == std::vector<int>{0, 1, 2});
}

TEST_CASE("elicitation reproduces the running example approvals") {
  InputProfile input = elicit(fixtures::running_example_profile(), fixtures::running_example_taus());
  using fixtures::kItemA;
  using fixtures::kItemC;
  using fixtures::kItemD;
  CHECK(items_of(input, 0, 1) == std::vector<int>{kItemA, kItemC});
  CHECK(items_of(input, 0, 2).empty());
  CHECK(items_of(input, 1, 1) == std::vector<int>{kItemD});
  CHECK(items_of(input, 1, 2) == std::vector<int>{kItemC});
  CHECK(items_of(input, 2, 1).empty());
  CHECK(items_of(input, 2, 2) == std::vector<int>{kItemA, kItemC, kItemD});
  CHECK(items_of(input, 3, 1).empty());
  CHECK(items_of(input, 3, 2).empty());
}

TEST_CASE("elicit round-trips through the consistency check") {
  Rng rng(5);
  for (int round = 0; round < 50; ++round) {
    int n = 2 + static_cast<int>(rng.below(5));
    int t = 1 + static_cast<int>(rng.below(3));
    UtilityProfile p = random_unit_sum_profile(n, rng);
    double delta = 1.5 + 3 * rng.unit();
    ThresholdVector taus = ThresholdVector::geometric(delta, t);
    InputProfile input = elicit(p, taus);
    input.validate_shape();  // disjointness
    CHECK(is_consistent(p, input, taus).ok);
    CHECK(feasible(input, taus, n));

    // Refining the vector with one more threshold never removes an item
    // from the union of an agent's approvals.
    ThresholdVector finer = taus;
    finer.taus.push_back(taus.last() / 2);
    InputProfile refined = elicit(p, finer);
    for (int i = 0; i < n; ++i) {
      std::set<int> before, after;
      for (const auto& level : input.sets[i])
        for (const auto& mem : level) before.insert(mem.item);
      for (const auto& level : refined.sets[i])
        for (const auto& mem : level) after.insert(mem.item);
      CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
  }
}

TEST_CASE("consistency violations name the first offender") {
  ThresholdVector taus{{0.5, 0.25}};
  UtilityProfile p;
  p.u = {{0.6, 0.4}};
  InputProfile input = elicit(p, taus);

  // Move the top approval down a level: 0.6 does not fit (0.25, 0.5].
  InputProfile demoted = input;
  demoted.sets[0][0].clear();
  demoted.sets[0][1] = {{0, 1}, {1, 1}};
  auto check = is_consistent(p, demoted, taus);
  CHECK_FALSE(check.ok);
  CHECK(check.violation.find("agent 0") != std::string::npos);
  CHECK(check.violation.find("level 2") != std::string::npos);
  CHECK(check.violation.find("item 0") != std::string::npos);

  // An unlisted item above tau_t is a violation too.
  InputProfile missing = input;
  missing.sets[0][1].clear();  // u = 0.4 > tau_2 = 0.25 now unlisted
  check = is_consistent(p, missing, taus);
  CHECK_FALSE(check.ok);
  CHECK(check.violation.find("unlisted") != std::string::npos);
}

TEST_CASE("closure boundary utilities validate") {
  // The adversarial generators place utilities exactly on the closed
  // interval boundary; the relaxed validator must accept them.
  ThresholdVector taus{{0.5, 0.25}};
  UtilityProfile p;
  p.u = {{0.5, 0.25, 0.25, 0.0}};
  InputProfile input;
  input.kind = ProfileKind::OneSided;
  input.t = 2;
  input.sets.assign(1, std::vector<std::vector<ApprovalMember>>(2));
  input.sets[0][0] = {{0, 1}};          // u = tau_1 at the bottom of band 1
  input.sets[0][1] = {{1, 1}, {2, 1}};  // u = tau_2 at the bottom of band 2
  CHECK(is_consistent(p, input, taus).ok);
}

TEST_CASE("feasibility uses the closed-interval relaxation") {
  // All-empty approvals: feasible iff n tau_t >= 1.
  int n = 4, t = 2;
  InputProfile empty;
  empty.kind = ProfileKind::OneSided;
  empty.t = t;
  empty.sets.assign(n, std::vector<std::vector<ApprovalMember>>(t));

  ThresholdVector roomy{{0.5, 0.25}};  // 4 * 0.25 = 1
  CHECK(feasible(empty, roomy, n));

  ThresholdVector tight{{0.5, 1.0 / (2 * n)}};
  CHECK_FALSE(feasible(empty, tight, n));

  // A single agent approving every item at the top level with tau_1 > 1/n
  // overshoots the unit sum from below.
  InputProfile greedy;
  greedy.kind = ProfileKind::OneSided;
  greedy.t = 1;
  greedy.sets.assign(1, std::vector<std::vector<ApprovalMember>>(1));
  for (int j = 0; j < n; ++j) greedy.sets[0][0].push_back({j, 1});
  ThresholdVector high{{0.3}};  // 4 * 0.3 > 1
  CHECK_FALSE(feasible(greedy, high, n));
  ThresholdVector low{{0.2}};
  CHECK(feasible(greedy, low, n));
}

TEST_CASE("generalized elicitation classifies marginals per copy") {
  GeneralizedInstance inst;
  inst.n = 1;
  inst.m = 2;
  inst.capacities = {2};
  inst.supplies = {2, 1};
  inst.marginals = {{{0.6, 0.2}, {0.2}}};
  inst.validate();

  ThresholdVector taus{{0.5, 0.1}};
  InputProfile input = elicit(inst, taus);
  REQUIRE(input.kind == ProfileKind::Generalized);
  REQUIRE(input.sets[0][0].size() == 1);
  CHECK(input.sets[0][0][0] == ApprovalMember{0, 1});
  REQUIRE(input.sets[0][1].size() == 2);
  CHECK(input.sets[0][1][0] == ApprovalMember{0, 2});
  CHECK(input.sets[0][1][1] == ApprovalMember{1, 1});
  CHECK(is_consistent(inst, input, taus).ok);
  CHECK(feasible(input, taus, inst.capacities, inst.supplies));
}

TEST_CASE("generalized round trip on random instances") {
  Rng rng(31);
  for (int round = 0; round < 30; ++round) {
    GeneralizedInstance inst = random_generalized_instance(
        1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)), 3, 8, rng);
    ThresholdVector taus = ThresholdVector::geometric(2.0 + 2 * rng.unit(),
                                                      1 + static_cast<int>(rng.below(3)));
    InputProfile input = elicit(inst, taus);
    input.validate_shape();
    CHECK(is_consistent(inst, input, taus).ok);
    CHECK(feasible(input, taus, inst.capacities, inst.supplies));
  }
}
