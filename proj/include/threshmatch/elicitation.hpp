#pragma once

#include <string>

#include "threshmatch/core.hpp"

namespace threshmatch {

// Classification is exact: item j lands in S_{i,k} iff tau_{k-1} >= u_i(j) > tau_k
// with tau_0 = 1; utilities at or below tau_t stay unlisted.
InputProfile elicit(const UtilityProfile& profile, const ThresholdVector& taus);

// Generalized variant over (item, copy) pairs with marginal utilities.
InputProfile elicit(const GeneralizedInstance& inst, const ThresholdVector& taus);

struct ConsistencyCheck {
  bool ok = true;
  std::string violation;  // first violation, empty when ok

  explicit operator bool() const { return ok; }
};

// Closure validation: strictness of u > tau_k is relaxed by kBoundaryTol so
// boundary profiles produced by the adversarial generators are accepted.
ConsistencyCheck is_consistent(const UtilityProfile& profile, const InputProfile& input,
                               const ThresholdVector& taus);
ConsistencyCheck is_consistent(const GeneralizedInstance& inst, const InputProfile& input,
                               const ThresholdVector& taus);

// Whether the closed-interval relaxation of an input profile admits any
// unit-sum consistent utility: per agent, sum of interval lower bounds <= 1
// <= sum of interval upper bounds.
bool feasible(const InputProfile& input, const ThresholdVector& taus, int items);
bool feasible(const InputProfile& input, const ThresholdVector& taus,
              const std::vector<int>& capacities, const std::vector<int>& supplies);

}  // namespace threshmatch
