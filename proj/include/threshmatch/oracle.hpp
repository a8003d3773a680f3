#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "threshmatch/core.hpp"
#include "threshmatch/rng.hpp"

namespace threshmatch {

inline constexpr double kDinkelbachTol = 1e-10;
inline constexpr int kDinkelbachMaxIter = 200;
inline constexpr int kMaxOneSidedOracleAgents = 9;
inline constexpr long long kMaxGeneralizedOracleTotal = 8;

struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-agent closed utility intervals: approved at level k -> [tau_k,
// tau_{k-1}]; unlisted -> [0, tau_t]. Coordinates are items in the
// one-sided setting and flattened (item, copy) pairs in the generalized one.
struct ConsistencyBox {
  std::vector<std::vector<double>> lo, hi;

  int agents() const { return static_cast<int>(lo.size()); }
  bool feasible() const;  // per agent: sum lo <= 1 <= sum hi
};

ConsistencyBox consistency_box(const InputProfile& input, const ThresholdVector& taus);
ConsistencyBox consistency_box(const InputProfile& input, const ThresholdVector& taus,
                               const GeneralizedInstance& inst);

// Flattening of the generalized coordinate space: coordinate of (a, j) is
// offset[a] + j - 1, identical for every agent pair depth layout per agent.
struct GenCoordMap {
  std::vector<std::vector<int>> offset;  // [agent][item]
  std::vector<int> size;                 // coords per agent

  static GenCoordMap of(const GeneralizedInstance& inst);
  int coord(int agent, int item, int copy) const { return offset[agent][item] + copy - 1; }
};

struct LinearMaxResult {
  std::vector<double> u;
  double value = 0;
};

// Exact maximizer of sum_j coeffs[j] u[j] over {lo <= u <= hi, sum u = 1}
// by water-filling: start at lo and pour the slack into coordinates in
// descending coefficient order.
LinearMaxResult agent_linear_max(const std::vector<double>& coeffs,
                                 const std::vector<double>& lo, const std::vector<double>& hi);

// sup over box-consistent u of N(u)/D(u) with per-agent-linear N and D.
struct RatioProblem {
  const ConsistencyBox* box = nullptr;
  std::vector<std::vector<double>> num;  // per agent, per coordinate
  std::vector<std::vector<double>> den;
};

struct RatioResult {
  double ratio = 0;
  bool unbounded = false;
  std::vector<std::vector<double>> witness;  // per agent utility vector
  std::vector<double> lambda_history;
  double final_residual = 0;
  int iterations = 0;
};

// Dinkelbach iteration with the exact separable inner maximizer. Reports
// +infinity when the denominator can vanish while the numerator stays
// positive (feasible D = 0 face with max N > 0). Throws after
// kDinkelbachMaxIter iterations instead of truncating.
RatioResult worst_case_ratio(const RatioProblem& problem);

struct DistortionResult {
  double distortion = 1.0;
  bool unbounded = false;
  Matching best_alternative;
  std::vector<std::vector<double>> witness_u;
};

// Exact distortion of an assignment distribution p on a one-sided input
// profile: max over all n! alternative matchings of the worst-case ratio.
// Refuses instances with more than kMaxOneSidedOracleAgents agents.
DistortionResult exact_distortion(const std::vector<std::vector<double>>& p,
                                  const InputProfile& input, const ThresholdVector& taus);

struct GenDistortionResult {
  double distortion = 1.0;
  bool unbounded = false;
  Allocation best_alternative;
  std::vector<std::vector<double>> witness_u;  // flattened per agent
};

// Generalized variant: alternatives are all maximal feasible allocations,
// the denominator is given as per-coordinate expected-copy coefficients.
// Refuses instances with assignable total above kMaxGeneralizedOracleTotal.
GenDistortionResult exact_distortion(const std::vector<std::vector<double>>& den_coeffs,
                                     const InputProfile& input, const ThresholdVector& taus,
                                     const GeneralizedInstance& inst);

// Expected copy counts per flattened coordinate for a fixed allocation
// (indicator of j <= x_i(a)) and for GR_t's mixture.
std::vector<std::vector<double>> allocation_coeffs(const Allocation& alloc,
                                                   const GeneralizedInstance& inst);
std::vector<std::vector<double>> grt_denominator_coeffs(const Allocation& gt_output,
                                                        const GeneralizedInstance& inst);

// Depth-first enumeration of all maximal feasible allocations (total = F),
// honoring copy limits; deterministic order.
std::vector<Allocation> enumerate_maximal_allocations(const GeneralizedInstance& inst);

// Monte Carlo estimate of p(i, a); rows sum to 1, deterministic given seed.
std::vector<std::vector<double>> estimate_probabilities(
    const std::function<Matching(Rng&)>& sample_matching, int n, int samples, uint64_t seed);

}  // namespace threshmatch
