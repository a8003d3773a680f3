#pragma once

#include "threshmatch/core.hpp"
#include "threshmatch/rng.hpp"

namespace threshmatch {

// Unit-sum rows via normalized exponentials (uniform on the simplex).
UtilityProfile random_unit_sum_profile(int n, Rng& rng);

// Random generalized instance with nonincreasing per-pair marginals and
// unit-sum per-agent totals; capacities and supplies are balanced to a
// common total drawn in [max(n, m), max_total].
GeneralizedInstance random_generalized_instance(int n, int m, int max_cap, long long max_total,
                                                Rng& rng);

// Square unit-capacity/unit-supply instance, the one-sided special case.
GeneralizedInstance unit_generalized_instance(const UtilityProfile& profile);

}  // namespace threshmatch
