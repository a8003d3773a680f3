#include "threshmatch/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace threshmatch {

UtilityProfile random_unit_sum_profile(int n, Rng& rng) {
  UtilityProfile profile;
  profile.u.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    double sum = 0;
    for (int j = 0; j < n; ++j) {
      profile.u[i][j] = rng.exponential();
      sum += profile.u[i][j];
    }
    for (int j = 0; j < n; ++j) profile.u[i][j] /= sum;
  }
  return profile;
}

namespace {

// Composition of `total` into `parts` values in [1, max_each].
std::vector<int> random_composition(long long total, int parts, int max_each, Rng& rng) {
  std::vector<int> out(parts, 1);
  long long left = total - parts;
  while (left > 0) {
    int idx = static_cast<int>(rng.below(parts));
    if (out[idx] < max_each) {
      ++out[idx];
      --left;
    }
  }
  return out;
}

}  // namespace

GeneralizedInstance random_generalized_instance(int n, int m, int max_cap, long long max_total,
                                                Rng& rng) {
  const long long least = std::max(n, m);
  const long long most = std::min({max_total, static_cast<long long>(n) * max_cap,
                                   static_cast<long long>(m) * max_cap});
  if (most < least)
    throw std::invalid_argument("max_total/max_cap too small for the requested dimensions");

  long long total = least + static_cast<long long>(rng.below(most - least + 1));
  GeneralizedInstance inst;
  inst.n = n;
  inst.m = m;
  inst.capacities = random_composition(total, n, max_cap, rng);
  inst.supplies = random_composition(total, m, max_cap, rng);

  inst.marginals.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.marginals[i].resize(m);
    double sum = 0;
    for (int a = 0; a < m; ++a) {
      int depth = inst.pair_depth(i, a);
      inst.marginals[i][a].resize(depth);
      for (int j = 0; j < depth; ++j) {
        inst.marginals[i][a][j] = rng.exponential();
        sum += inst.marginals[i][a][j];
      }
      // Copies of an item have diminishing marginal value.
      std::sort(inst.marginals[i][a].begin(), inst.marginals[i][a].end(), std::greater<>());
    }
    for (int a = 0; a < m; ++a)
      for (double& v : inst.marginals[i][a]) v /= sum;
  }
  return inst;
}

GeneralizedInstance unit_generalized_instance(const UtilityProfile& profile) {
  const int n = profile.agents();
  GeneralizedInstance inst;
  inst.n = n;
  inst.m = n;
  inst.capacities.assign(n, 1);
  inst.supplies.assign(n, 1);
  inst.marginals.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.marginals[i].resize(n);
    for (int a = 0; a < n; ++a) inst.marginals[i][a] = {profile.u[i][a]};
  }
  return inst;
}

}  // namespace threshmatch
