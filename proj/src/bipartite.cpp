#include "threshmatch/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace threshmatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^3) assignment on a square cost matrix (minimization, potentials
// method). Returns for each row the assigned column.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) match[p[j] - 1] = j - 1;
  return match;
}

// Optimal matching weight of the subgraph induced by the unexcluded nodes.
// Missing edges pad the square matrix at weight 0, which is equivalent to
// leaving nodes unmatched since real weights are strictly positive.
double best_weight_excluding(const WeightedBipartiteGraph& g, const std::vector<char>& skip_left,
                             const std::vector<char>& skip_right) {
  std::vector<int> lefts, rights;
  std::vector<int> lmap(g.left_count, -1), rmap(g.right_count, -1);
  for (const auto& e : g.edges) {
    if (skip_left[e.left] || skip_right[e.right]) continue;
    if (lmap[e.left] < 0) {
      lmap[e.left] = static_cast<int>(lefts.size());
      lefts.push_back(e.left);
    }
    if (rmap[e.right] < 0) {
      rmap[e.right] = static_cast<int>(rights.size());
      rights.push_back(e.right);
    }
  }
  if (lefts.empty()) return 0.0;
  const int size = std::max(static_cast<int>(lefts.size()), static_cast<int>(rights.size()));
  std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
  for (const auto& e : g.edges) {
    if (skip_left[e.left] || skip_right[e.right]) continue;
    cost[lmap[e.left]][rmap[e.right]] = -e.weight;
  }
  std::vector<int> match = solve_assignment(cost);
  double total = 0;
  for (int r = 0; r < size; ++r)
    if (match[r] >= 0) total -= cost[r][match[r]];
  return total;
}

}  // namespace

void WeightedBipartiteGraph::add_edge(int left, int right, double weight) {
  if (left < 0 || left >= left_count || right < 0 || right >= right_count)
    throw std::invalid_argument("edge endpoints out of range");
  if (!(weight > 0.0)) throw std::invalid_argument("edge weights must be strictly positive");
  edges.push_back({left, right, weight});
}

void WeightedBipartiteGraph::validate() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.left < 0 || e.left >= left_count || e.right < 0 || e.right >= right_count)
      throw std::invalid_argument("edge endpoints out of range");
    if (!(e.weight > 0.0))
      throw std::invalid_argument("edge weights must be strictly positive");
    if (!seen.insert({e.left, e.right}).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.left) + "," +
                                  std::to_string(e.right) + ")");
  }
}

int MatchingEdges::partner_of_left(int l) const {
  for (const auto& [a, b] : pairs)
    if (a == l) return b;
  return -1;
}

int MatchingEdges::partner_of_right(int r) const {
  for (const auto& [a, b] : pairs)
    if (b == r) return a;
  return -1;
}

MatchingEdges max_weight_matching(const WeightedBipartiteGraph& g) {
  g.validate();
  MatchingEdges result;
  if (g.edges.empty()) return result;

  const double best = best_weight_excluding(g, std::vector<char>(g.left_count, 0),
                                            std::vector<char>(g.right_count, 0));
  const double tie_tol = 1e-12 * (1.0 + std::fabs(best));

  // Canonicalization pass: fix pairs in lexicographic order whenever doing
  // so keeps an optimal completion reachable.
  std::vector<std::vector<std::pair<int, double>>> adj(g.left_count);
  for (const auto& e : g.edges) adj[e.left].push_back({e.right, e.weight});
  for (auto& v : adj) std::sort(v.begin(), v.end());

  std::vector<char> used_left(g.left_count, 0), used_right(g.right_count, 0);
  double fixed_weight = 0;
  for (int l = 0; l < g.left_count; ++l) {
    for (const auto& [r, w] : adj[l]) {
      if (used_right[r]) continue;
      used_left[l] = 1;
      used_right[r] = 1;
      double completion = best_weight_excluding(g, used_left, used_right);
      if (fixed_weight + w + completion >= best - tie_tol) {
        fixed_weight += w;
        result.pairs.push_back({l, r});
        break;
      }
      used_left[l] = 0;
      used_right[r] = 0;
    }
  }
  if (std::fabs(fixed_weight - best) > 1e-9 * (1.0 + std::fabs(best)))
    throw std::logic_error("matching canonicalization lost optimality");
  result.weight = fixed_weight;
  return result;
}

MatchingEdges greedy_bound_matching(const WeightedBipartiteGraph& g, double W, double L) {
  g.validate();
  std::vector<double> incident(g.left_count, 0.0);
  for (const auto& e : g.edges) {
    if (e.weight < L - kUnitSumTol)
      throw std::invalid_argument("edge weight below the stated L");
    incident[e.left] += e.weight;
  }
  for (int l = 0; l < g.left_count; ++l) {
    if (incident[l] < W - kUnitSumTol)
      throw std::invalid_argument("left node " + std::to_string(l) +
                                  " has incident weight below the stated W");
  }

  std::vector<std::vector<std::pair<int, double>>> by_right(g.right_count);
  for (const auto& e : g.edges) by_right[e.right].push_back({e.left, e.weight});
  for (auto& v : by_right) std::sort(v.begin(), v.end());

  MatchingEdges result;
  std::vector<char> used_left(g.left_count, 0);
  for (int r = 0; r < g.right_count; ++r) {
    int pick = -1;
    double pick_w = 0;
    for (const auto& [l, w] : by_right[r]) {
      if (used_left[l]) continue;
      if (pick < 0 || w > pick_w + kBoundaryTol) {
        pick = l;
        pick_w = w;
      }
    }
    if (pick >= 0) {
      used_left[pick] = 1;
      result.pairs.push_back({pick, r});
      result.weight += pick_w;
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

MinProbMatching min_probability_matching(const std::vector<std::vector<double>>& p,
                                         const std::vector<int>& item_subset) {
  const int n = static_cast<int>(p.size());
  if (n == 0) throw std::invalid_argument("empty probability matrix");
  const int cols = static_cast<int>(p[0].size());
  if (static_cast<int>(item_subset.size()) > n)
    throw std::invalid_argument("item subset larger than the agent count");

  std::vector<double> col_sum(cols, 0.0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(p[i].size()) != cols)
      throw std::invalid_argument("ragged probability matrix");
    double row_sum = 0;
    for (int a = 0; a < cols; ++a) {
      double v = p[i][a];
      if (v < -kBoundaryTol || v > 1.0 + kUnitSumTol)
        throw std::invalid_argument("probability entry outside [0, 1]");
      row_sum += v;
      col_sum[a] += v;
    }
    if (row_sum > 1.0 + kUnitSumTol)
      throw std::invalid_argument("row " + std::to_string(i) + " of p sums to more than 1");
  }
  std::set<int> seen;
  for (int a : item_subset) {
    if (a < 0 || a >= cols) throw std::invalid_argument("item subset index out of range");
    if (!seen.insert(a).second) throw std::invalid_argument("item subset has duplicates");
    if (col_sum[a] > 1.0 + kUnitSumTol)
      throw std::invalid_argument("column " + std::to_string(a) + " of p sums to more than 1");
  }

  MinProbMatching result;
  std::vector<char> used_agent(n, 0);
  std::vector<char> used_item(cols, 0);
  double running = 0;
  for (size_t step = 0; step < item_subset.size(); ++step) {
    int best_i = -1, best_a = -1;
    double best_p = kInf;
    for (int i = 0; i < n; ++i) {
      if (used_agent[i]) continue;
      for (int a : item_subset) {
        if (used_item[a]) continue;
        if (p[i][a] < best_p - kBoundaryTol ||
            (p[i][a] < best_p + kBoundaryTol &&
             (best_i < 0 || std::pair(i, a) < std::pair(best_i, best_a)))) {
          best_i = i;
          best_a = a;
          best_p = p[i][a];
        }
      }
    }
    used_agent[best_i] = 1;
    used_item[best_a] = 1;
    running += p[best_i][best_a];
    result.pairs.push_back({best_i, best_a});
    result.partial_sums.push_back(running);
  }
  result.total = running;
  return result;
}

}  // namespace threshmatch
