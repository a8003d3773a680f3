#include "threshmatch/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

namespace threshmatch {

void MechanismConfig::validate() const {
  if (t < 1) throw std::invalid_argument("mechanism needs t >= 1");
  if (!(delta > 1.0)) throw std::invalid_argument("mechanism needs delta > 1");
}

double ft_default_delta(int n, int t) { return std::pow(2.0 * n, 1.0 / t); }

double rt_default_delta(int n, int t) { return std::pow(static_cast<double>(n), 1.0 / (t + 1)); }

WeightedBipartiteGraph build_threshold_graph(const InputProfile& input,
                                             const ThresholdVector& taus) {
  if (input.kind != ProfileKind::OneSided)
    throw std::invalid_argument("threshold graph is defined for one-sided profiles");
  if (input.t != taus.t())
    throw std::invalid_argument("input profile and threshold vector disagree on t");
  const int n = input.agents();
  WeightedBipartiteGraph g;
  g.left_count = n;
  g.right_count = n;
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= input.t; ++k) {
      for (const auto& mem : input.sets[i][k - 1]) {
        g.add_edge(i, mem.item, taus.tau(k));
      }
    }
  }
  return g;
}

Matching run_ft(const InputProfile& input, const ThresholdVector& taus) {
  const int n = input.agents();
  WeightedBipartiteGraph g = build_threshold_graph(input, taus);
  MatchingEdges matched = max_weight_matching(g);

  Matching result;
  result.assign.assign(n, -1);
  std::vector<char> item_used(n, 0);
  for (const auto& [i, a] : matched.pairs) {
    result.assign[i] = a;
    item_used[a] = 1;
  }
  // Ascending-index completion of the unmatched agents and items.
  int next_item = 0;
  for (int i = 0; i < n; ++i) {
    if (result.assign[i] >= 0) continue;
    while (item_used[next_item]) ++next_item;
    result.assign[i] = next_item;
    item_used[next_item] = 1;
  }
  result.validate_bijection();
  return result;
}

Matching run_ft(const InputProfile& input, const MechanismConfig& config) {
  config.validate();
  return run_ft(input, config.taus());
}

Matching run_rt(const InputProfile& input, const ThresholdVector& taus, Rng& rng) {
  if (rng.coin()) {
    Matching result;
    result.assign = rng.permutation(input.agents());
    return result;
  }
  return run_ft(input, taus);
}

Matching run_rt(const InputProfile& input, const MechanismConfig& config, Rng& rng) {
  config.validate();
  return run_rt(input, config.taus(), rng);
}

std::vector<std::vector<double>> rt_distribution(const InputProfile& input,
                                                 const ThresholdVector& taus) {
  const int n = input.agents();
  Matching ft = run_ft(input, taus);
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.5 / n));
  for (int i = 0; i < n; ++i) p[i][ft.assign[i]] += 0.5;
  return p;
}

std::vector<std::vector<double>> rt_distribution(const InputProfile& input,
                                                 const MechanismConfig& config) {
  config.validate();
  return rt_distribution(input, config.taus());
}

std::vector<std::vector<double>> matching_indicator(const Matching& matching) {
  const int n = matching.size();
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) p[i][matching.assign[i]] = 1.0;
  return p;
}

double matching_graph_weight(const Matching& matching, const InputProfile& input,
                             const ThresholdVector& taus) {
  if (input.kind != ProfileKind::OneSided)
    throw std::invalid_argument("graph weight is defined for one-sided profiles");
  double total = 0;
  for (int i = 0; i < input.agents(); ++i) {
    for (int k = 1; k <= input.t; ++k) {
      for (const auto& mem : input.sets[i][k - 1]) {
        if (mem.item == matching.assign[i]) total += taus.tau(k);
      }
    }
  }
  return total;
}

}  // namespace threshmatch
