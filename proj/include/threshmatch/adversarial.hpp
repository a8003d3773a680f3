#pragma once

#include <vector>

#include "threshmatch/core.hpp"

namespace threshmatch {

// argmax_k tau_{k-1}/tau_k with tau_0 = 1 (1-based, ties to the smallest k).
// The returned gap is always at least tau_t^(-1/t).
int max_gap_index(const ThresholdVector& taus);

// All-empty approval sets for n agents and t levels.
InputProfile empty_profile(int n, int t, ProfileKind kind = ProfileKind::OneSided);

// The largest m with tau_{k-1}/2 + m tau_k strictly below 1; the strictness
// realizes the construction's infinitesimal at the closure boundary.
int gap_m(const ThresholdVector& taus, int k);

// Phase one of the threshold-gap instance: every agent approves the m+1
// items of M1 at level k and the single M2 item at the level whose band
// holds its forced utility. Requires gap > 2, k < t, and n >= m + 2.
InputProfile gap_input_profile(const ThresholdVector& taus, int k, int n);

struct GapInstance {
  InputProfile input;
  UtilityProfile utilities;
  int k = 0;        // approval level of M1
  int k_prime = 0;  // approval level of M2
  int m = 0;        // |M1| - 1
  int a_star = 0;   // pinned M1 item (lowest index)
  std::vector<int> m1_items;
  int m2_item = 0;
};

// Phase two: given the target mechanism's assignment probabilities on the
// phase-one profile, builds the consistent utility profile of the gap
// construction around the minimum-probability matching of M1.
GapInstance gen_gap_instance(const ThresholdVector& taus, int k, int n,
                             const std::vector<std::vector<double>>& p);

// Utilities that drive a deterministic mechanism with matching A to zero
// welfare while a shifted matching collects n tau_t; consistent with the
// all-empty profile. Requires tau_t >= 1/(n-1) and n >= 3.
UtilityProfile gen_empty_det_adversary(const ThresholdVector& taus, int n, const Matching& A);

// Randomized-mechanism analogue: tau_t on the minimum-probability matching
// partner, (1 - tau_t)/(n-1) elsewhere. Requires tau_t > 1/n.
UtilityProfile gen_empty_rand_adversary(const ThresholdVector& taus, int n,
                                        const std::vector<std::vector<double>>& p);

}  // namespace threshmatch
