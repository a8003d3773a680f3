#pragma once

#include <cstdint>

#include "threshmatch/bipartite.hpp"
#include "threshmatch/core.hpp"
#include "threshmatch/rng.hpp"

namespace threshmatch {

enum class MechanismMode { Deterministic, Randomized };

// Every mechanism uses the geometric threshold vector (delta^-1, ..., delta^-t).
struct MechanismConfig {
  int t = 1;
  double delta = 2.0;
  MechanismMode mode = MechanismMode::Deterministic;
  uint64_t seed = 0;

  ThresholdVector taus() const { return ThresholdVector::geometric(delta, t); }
  void validate() const;
};

// Delta choices that optimize the worst-case guarantees, overridable per
// experiment.
double ft_default_delta(int n, int t);  // (2n)^(1/t)
double rt_default_delta(int n, int t);  // n^(1/(t+1))

// The graph G_S: edge (v_i, z_a) of weight tau_k iff a in S_{i,k}.
WeightedBipartiteGraph build_threshold_graph(const InputProfile& input,
                                             const ThresholdVector& taus);

// Deterministic mechanism f_t: maximum-weight matching of G_S, then
// unmatched agents paired to unmatched items in ascending index order.
// The explicit-taus overload serves callers that carry the vector around
// (profile files, hand-built fixtures); the config one derives it.
Matching run_ft(const InputProfile& input, const ThresholdVector& taus);
Matching run_ft(const InputProfile& input, const MechanismConfig& config);

// Randomized mechanism R_t: fair coin, then either a uniform random
// matching or f_t's output.
Matching run_rt(const InputProfile& input, const ThresholdVector& taus, Rng& rng);
Matching run_rt(const InputProfile& input, const MechanismConfig& config, Rng& rng);

// Exact assignment distribution of R_t: p(i,a) = 1/(2n) + [f_t(i) = a]/2.
std::vector<std::vector<double>> rt_distribution(const InputProfile& input,
                                                 const ThresholdVector& taus);
std::vector<std::vector<double>> rt_distribution(const InputProfile& input,
                                                 const MechanismConfig& config);

// 0/1 matrix of a deterministic matching.
std::vector<std::vector<double>> matching_indicator(const Matching& matching);

// Total tau-weight a matching collects on G_S edges (its V-welfare).
double matching_graph_weight(const Matching& matching, const InputProfile& input,
                             const ThresholdVector& taus);

}  // namespace threshmatch
