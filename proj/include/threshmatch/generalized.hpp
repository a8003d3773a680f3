#pragma once

#include "threshmatch/core.hpp"
#include "threshmatch/flow.hpp"
#include "threshmatch/mechanisms.hpp"
#include "threshmatch/rng.hpp"

namespace threshmatch {

double gt_default_delta(long long T, int t);   // (2T)^(1/t)
double grt_default_delta(long long T, int t);  // (2T)^(1/(t+1))

// V_{i,a,j} = tau_k when (a,j) is approved at level k, 0 otherwise;
// -infinity beyond a copy limit.
std::vector<std::vector<std::vector<double>>> values_from_profile(
    const InputProfile& input, const ThresholdVector& taus, const GeneralizedInstance& inst);

struct GtResult {
  Allocation allocation;
  double v_welfare = 0;  // |min cost|, the allocation's welfare w.r.t. V
};

// Deterministic generalized mechanism g_t: derive V from the approvals,
// solve G(C, M, V), read the allocation off the entry arcs. Rejects inputs
// whose derived V increases in the copy index for some pair, naming it.
GtResult run_gt(const InputProfile& input, const GeneralizedInstance& inst,
                const ThresholdVector& taus);
GtResult run_gt(const InputProfile& input, const GeneralizedInstance& inst,
                const MechanismConfig& config);

// Randomized generalized mechanism GR_t: fair coin, then either a uniform
// random bundling (each matched agent receives min{c_i, m_a} copies of its
// item, nothing else) or g_t. The bundled branch is generally not maximal.
Allocation run_grt(const InputProfile& input, const GeneralizedInstance& inst,
                   const ThresholdVector& taus, Rng& rng);
Allocation run_grt(const InputProfile& input, const GeneralizedInstance& inst,
                   const MechanismConfig& config, Rng& rng);

// Probability that a fixed (agent, item) pair is matched by the uniform
// bundling branch: exactly 1/max{n, m}.
double grt_random_pair_probability(int n, int m);

// The bundled allocation for one sampled matching (item -> agent, -1 when
// unmatched); exposed so the expected welfare can be computed exactly.
Allocation bundled_allocation(const std::vector<int>& item_to_agent,
                              const GeneralizedInstance& inst);

// Lower bound delta^-1 (s* - T tau_t) on g_t's welfare.
double welfare_lower_bound_gt(double s_star, long long T, const ThresholdVector& taus,
                              double delta);

}  // namespace threshmatch
