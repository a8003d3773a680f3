#include "threshmatch/adversarial.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "threshmatch/bipartite.hpp"

namespace threshmatch {

int max_gap_index(const ThresholdVector& taus) {
  taus.validate();
  int best_k = 1;
  double best_gap = 0;
  for (int k = 1; k <= taus.t(); ++k) {
    double gap = taus.tau(k - 1) / taus.tau(k);
    if (gap > best_gap + kBoundaryTol) {
      best_gap = gap;
      best_k = k;
    }
  }
  return best_k;
}

InputProfile empty_profile(int n, int t, ProfileKind kind) {
  InputProfile input;
  input.kind = kind;
  input.t = t;
  input.sets.assign(n, std::vector<std::vector<ApprovalMember>>(t));
  return input;
}

int gap_m(const ThresholdVector& taus, int k) {
  double r = (1.0 - taus.tau(k - 1) / 2.0) / taus.tau(k);
  // Largest m with tau_{k-1}/2 + m tau_k < 1; values within 1e-9 of an
  // integer count as the boundary and drop to the integer below.
  return static_cast<int>(std::ceil(r - 1e-9)) - 1;
}

namespace {

// Level whose band (tau_k', tau_{k'-1}] holds the M2 utility, or 0 when it
// falls at or below tau_t. Values within 1e-9 of a threshold sit on the
// closure boundary and belong to the band below it, mirroring the strict
// elicitation rule.
int classify_level(double u, const ThresholdVector& taus) {
  if (u <= taus.last() + 1e-9) return 0;
  for (int k = 1; k <= taus.t(); ++k) {
    if (u > taus.tau(k) + 1e-9) return k;
  }
  return taus.t();
}

double gap_m2_utility(const ThresholdVector& taus, int k, int m) {
  double u2 = 1.0 - taus.tau(k - 1) / 2.0 - m * taus.tau(k);
  // At an exact boundary (tau_{k-1}/2 + (m+1) tau_k = 1) the filler utility
  // is tau_k itself; snap accumulated noise onto it.
  if (std::fabs(u2 - taus.tau(k)) < 1e-9) u2 = taus.tau(k);
  return u2;
}

}  // namespace

InputProfile gap_input_profile(const ThresholdVector& taus, int k, int n) {
  taus.validate();
  if (k < 1 || k > taus.t()) throw std::invalid_argument("gap level k out of range");
  if (k == taus.t())
    throw std::invalid_argument("gap instance needs a level below k to hold the filler item; "
                                "k = t admits none");
  double delta = taus.tau(k - 1) / taus.tau(k);
  if (!(delta > 2.0))
    throw std::invalid_argument("gap instance needs tau_{k-1}/tau_k > 2");
  const int m = gap_m(taus, k);
  if (n < m + 2)
    throw std::invalid_argument("gap instance needs n >= m + 2 = " + std::to_string(m + 2));

  const double u2 = gap_m2_utility(taus, k, m);
  const int k_prime = classify_level(u2, taus);
  if (k_prime <= k)
    throw std::invalid_argument("no threshold level below k can hold the filler item "
                                "(its forced utility is " + std::to_string(u2) + ")");

  InputProfile input = empty_profile(n, taus.t());
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a <= m; ++a) input.sets[i][k - 1].push_back({a, 1});
    input.sets[i][k_prime - 1].push_back({m + 1, 1});
  }
  return input;
}

GapInstance gen_gap_instance(const ThresholdVector& taus, int k, int n,
                             const std::vector<std::vector<double>>& p) {
  GapInstance gap;
  gap.input = gap_input_profile(taus, k, n);
  gap.k = k;
  gap.m = gap_m(taus, k);
  gap.m2_item = gap.m + 1;
  gap.a_star = 0;
  gap.m1_items.resize(gap.m + 1);
  std::iota(gap.m1_items.begin(), gap.m1_items.end(), 0);
  gap.k_prime = classify_level(gap_m2_utility(taus, k, gap.m), taus);

  MinProbMatching min_prob = min_probability_matching(p, gap.m1_items);
  std::vector<int> partner_of_item(n, -1);  // M1 item -> agent under A_{M1}
  std::vector<char> in_n1(n, 0);
  for (const auto& [agent, item] : min_prob.pairs) {
    partner_of_item[item] = agent;
    in_n1[agent] = 1;
  }

  const double high = taus.tau(k - 1) / 2.0;
  const double low = taus.tau(k);
  const double u2 = gap_m2_utility(taus, k, gap.m);
  gap.utilities.u.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a <= gap.m; ++a) {
      if (partner_of_item[a] == i) {
        gap.utilities.u[i][a] = high;
      } else if (a == gap.a_star && !in_n1[i]) {
        gap.utilities.u[i][a] = high;
      } else {
        gap.utilities.u[i][a] = low;
      }
    }
    gap.utilities.u[i][gap.m2_item] = u2;
    // Items of M3 keep utility 0.
  }
  return gap;
}

UtilityProfile gen_empty_det_adversary(const ThresholdVector& taus, int n, const Matching& A) {
  taus.validate();
  if (n < 3) throw std::invalid_argument("empty-profile adversary needs n >= 3");
  if (A.size() != n) throw std::invalid_argument("matching size does not match n");
  if (taus.last() < 1.0 / (n - 1) - kBoundaryTol)
    throw std::invalid_argument("empty-profile adversary needs tau_t >= 1/(n-1)");
  A.validate_bijection();

  const double tau_t = taus.last();
  const double rest = (1.0 - tau_t) / (n - 2);
  UtilityProfile u;
  u.u.assign(n, std::vector<double>(n, rest));
  for (int i = 0; i < n; ++i) {
    int b_item = A.assign[(i + 1) % n];  // cyclic shift: B(a) != A(a) everywhere
    u.u[i][A.assign[i]] = 0.0;
    u.u[i][b_item] = tau_t;
  }
  return u;
}

UtilityProfile gen_empty_rand_adversary(const ThresholdVector& taus, int n,
                                        const std::vector<std::vector<double>>& p) {
  taus.validate();
  if (n < 2) throw std::invalid_argument("empty-profile adversary needs n >= 2");
  if (taus.last() < 1.0 / n - kBoundaryTol)
    throw std::invalid_argument("randomized empty-profile adversary needs tau_t > 1/n");

  std::vector<int> all_items(n);
  std::iota(all_items.begin(), all_items.end(), 0);
  MinProbMatching min_prob = min_probability_matching(p, all_items);

  const double tau_t = taus.last();
  const double rest = (1.0 - tau_t) / (n - 1);
  UtilityProfile u;
  u.u.assign(n, std::vector<double>(n, rest));
  for (const auto& [agent, item] : min_prob.pairs) u.u[agent][item] = tau_t;
  return u;
}

}  // namespace threshmatch
