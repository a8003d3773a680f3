#pragma once

#include <utility>
#include <vector>

#include "threshmatch/core.hpp"

namespace threshmatch {

// Bipartite graph with strictly positive edge weights and no duplicate
// (left, right) pairs.
struct WeightedBipartiteGraph {
  struct Edge {
    int left = 0, right = 0;
    double weight = 0;
  };

  int left_count = 0, right_count = 0;
  std::vector<Edge> edges;

  void add_edge(int left, int right, double weight);
  void validate() const;
};

struct MatchingEdges {
  std::vector<std::pair<int, int>> pairs;  // (left, right), sorted by left
  double weight = 0;

  int partner_of_left(int l) const;   // -1 when unmatched
  int partner_of_right(int r) const;  // -1 when unmatched
};

// Exact maximum-weight matching (not necessarily perfect, existing edges
// only). Among maximum-weight matchings the result is canonical: scanning
// left nodes in ascending order, each is fixed to the smallest right index
// that still permits an optimal completion.
MatchingEdges max_weight_matching(const WeightedBipartiteGraph& g);

// The constructive matching behind the min{W, nL} bound: right nodes in
// ascending order each grab the still-unmatched left node with the largest
// incident weight. Preconditions: every left node has incident weight sum
// >= W and every edge weight >= L.
MatchingEdges greedy_bound_matching(const WeightedBipartiteGraph& g, double W, double L);

struct MinProbMatching {
  std::vector<std::pair<int, int>> pairs;  // (agent, item), in pick order
  std::vector<double> partial_sums;        // P_j after iteration j
  double total = 0;
};

// Greedy matching of the items in `item_subset` minimizing picked
// probabilities: repeatedly take the remaining (agent, item) pair with the
// smallest p, ties broken by smallest (agent, item). Requires |subset| <=
// agent count and a doubly substochastic p. The result satisfies
// P_j <= j/|M| for every prefix and hence total <= 1.
MinProbMatching min_probability_matching(const std::vector<std::vector<double>>& p,
                                         const std::vector<int>& item_subset);

}  // namespace threshmatch
