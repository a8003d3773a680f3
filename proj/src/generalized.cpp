#include "threshmatch/generalized.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace threshmatch {

double gt_default_delta(long long T, int t) { return std::pow(2.0 * T, 1.0 / t); }

double grt_default_delta(long long T, int t) { return std::pow(2.0 * T, 1.0 / (t + 1)); }

std::vector<std::vector<std::vector<double>>> values_from_profile(
    const InputProfile& input, const ThresholdVector& taus, const GeneralizedInstance& inst) {
  if (input.kind != ProfileKind::Generalized)
    throw std::invalid_argument("value derivation needs a generalized profile");
  if (input.t != taus.t())
    throw std::invalid_argument("input profile and threshold vector disagree on t");
  if (input.agents() != inst.n)
    throw std::invalid_argument("input profile and instance agent counts do not match");
  inst.validate_dims();

  std::vector<std::vector<std::vector<double>>> values(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    values[i].resize(inst.m);
    for (int a = 0; a < inst.m; ++a) values[i][a].assign(inst.pair_depth(i, a), 0.0);
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int k = 1; k <= input.t; ++k) {
      for (const auto& mem : input.sets[i][k - 1]) {
        if (mem.item < 0 || mem.item >= inst.m || mem.copy < 1 ||
            mem.copy > inst.pair_depth(i, mem.item))
          throw std::invalid_argument("approval of agent " + std::to_string(i) +
                                      " references an invalid (item, copy) pair");
        values[i][mem.item][mem.copy - 1] = taus.tau(k);
      }
    }
  }
  if (!inst.copy_limits.empty()) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < inst.n; ++i)
      for (int a = 0; a < inst.m; ++a)
        for (int j = inst.copy_limit(i, a); j < inst.pair_depth(i, a); ++j)
          values[i][a][j] = neg_inf;
  }
  return values;
}

GtResult run_gt(const InputProfile& input, const GeneralizedInstance& inst,
                const ThresholdVector& taus) {
  auto values = values_from_profile(input, taus, inst);

  std::vector<MonotonicityViolation> warnings;
  FlowNetwork net = build_network(inst.capacities, inst.supplies, values, &warnings);
  if (!warnings.empty()) {
    const auto& w = warnings.front();
    throw std::invalid_argument(
        "derived values increase in the copy index at (agent " + std::to_string(w.agent) +
        ", item " + std::to_string(w.item) + ", copy " + std::to_string(w.copy + 1) + ")");
  }
  FlowSolution sol = solve_min_cost(net);
  GtResult result;
  result.allocation = extract_allocation(net, sol);
  result.v_welfare = -sol.total_cost;
  return result;
}

GtResult run_gt(const InputProfile& input, const GeneralizedInstance& inst,
                const MechanismConfig& config) {
  config.validate();
  return run_gt(input, inst, config.taus());
}

Allocation bundled_allocation(const std::vector<int>& item_to_agent,
                              const GeneralizedInstance& inst) {
  Allocation alloc;
  alloc.x.assign(inst.n, std::vector<int>(inst.m, 0));
  long long total = 0;
  for (int a = 0; a < inst.m; ++a) {
    int i = item_to_agent[a];
    if (i < 0) continue;
    alloc.x[i][a] = inst.copy_limit(i, a);
    total += alloc.x[i][a];
  }
  alloc.maximal = (total == inst.assignable());
  return alloc;
}

Allocation run_grt(const InputProfile& input, const GeneralizedInstance& inst,
                   const ThresholdVector& taus, Rng& rng) {
  if (rng.coin()) {
    // Uniform matching of items to agents, injective on the smaller side.
    std::vector<int> item_to_agent(inst.m, -1);
    if (inst.n >= inst.m) {
      std::vector<int> agents = rng.permutation(inst.n);
      for (int a = 0; a < inst.m; ++a) item_to_agent[a] = agents[a];
    } else {
      std::vector<int> items = rng.permutation(inst.m);
      for (int i = 0; i < inst.n; ++i) item_to_agent[items[i]] = i;
    }
    return bundled_allocation(item_to_agent, inst);
  }
  return run_gt(input, inst, taus).allocation;
}

Allocation run_grt(const InputProfile& input, const GeneralizedInstance& inst,
                   const MechanismConfig& config, Rng& rng) {
  config.validate();
  return run_grt(input, inst, config.taus(), rng);
}

double grt_random_pair_probability(int n, int m) {
  return 1.0 / static_cast<double>(std::max(n, m));
}

double welfare_lower_bound_gt(double s_star, long long T, const ThresholdVector& taus,
                              double delta) {
  return (s_star - static_cast<double>(T) * taus.last()) / delta;
}

}  // namespace threshmatch
