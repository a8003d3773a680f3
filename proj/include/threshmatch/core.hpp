#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace threshmatch {

// Unit-sum and welfare comparisons share this tolerance; double-precision
// accumulation across the instance sizes we handle stays well below it.
inline constexpr double kUnitSumTol = 1e-9;
// Slack used when validating closed-interval (closure) consistency.
inline constexpr double kBoundaryTol = 1e-12;

// Agents and items are 0-based indices everywhere. Item labels, when an
// input file provides them, are resolved to indices at parse time.
struct OneSidedInstance {
  int n = 0;
  std::vector<std::string> item_labels;  // optional, size n when present

  static OneSidedInstance of_size(int n);
  void validate() const;
};

// Unit-sum utilities of n agents over n items; u[i][j] = u_i(j).
struct UtilityProfile {
  std::vector<std::vector<double>> u;

  int agents() const { return static_cast<int>(u.size()); }
  int items() const { return u.empty() ? 0 : static_cast<int>(u[0].size()); }
};

// Strictly decreasing thresholds 1 > tau_1 > ... > tau_t > 0, with the
// implicit tau_0 = 1.
struct ThresholdVector {
  std::vector<double> taus;

  int t() const { return static_cast<int>(taus.size()); }
  double tau(int k) const;  // tau(0) == 1
  double last() const { return taus.back(); }
  void validate() const;

  // The geometric vector (delta^-1, ..., delta^-t) used by every mechanism.
  static ThresholdVector geometric(double delta, int t);
};

enum class ProfileKind { OneSided, Generalized };

// A member of a threshold approval set: an item in the one-sided setting
// (copy == 1), an (item, copy-index) pair in the generalized one.
struct ApprovalMember {
  int item = 0;
  int copy = 1;  // 1-based

  friend bool operator==(const ApprovalMember&, const ApprovalMember&) = default;
  friend auto operator<=>(const ApprovalMember&, const ApprovalMember&) = default;
};

// Threshold approval sets, the only information a mechanism receives.
// sets[i][k-1] lists what agent i approved at level k; the t sets of an
// agent are pairwise disjoint.
struct InputProfile {
  ProfileKind kind = ProfileKind::OneSided;
  int t = 0;
  std::vector<std::vector<std::vector<ApprovalMember>>> sets;

  int agents() const { return static_cast<int>(sets.size()); }
  bool all_empty() const;
  void validate_shape() const;
};

// One-sided matching: assign[i] is the item matched to agent i.
struct Matching {
  std::vector<int> assign;

  int size() const { return static_cast<int>(assign.size()); }
  void validate_bijection() const;
  std::vector<int> inverse() const;  // item -> agent
};

// Agents with capacities, items with supplies, and per-copy marginal
// utilities: marginals[i][a][j-1] = u_i(a, j) for j in [min(c_i, m_a)].
// Per-agent totals (all items, all obtainable copies) sum to 1.
struct GeneralizedInstance {
  int n = 0, m = 0;
  std::vector<int> capacities;
  std::vector<int> supplies;
  std::vector<std::vector<std::vector<double>>> marginals;
  std::vector<std::vector<int>> copy_limits;  // empty = no limits

  int pair_depth(int i, int a) const {
    return std::min(capacities[i], supplies[a]);
  }
  int copy_limit(int i, int a) const {
    return copy_limits.empty() ? pair_depth(i, a)
                               : std::min(copy_limits[i][a], pair_depth(i, a));
  }
  long long total_capacity() const;
  long long total_supply() const;
  long long total() const;       // T: max of the two totals
  long long assignable() const;  // F: min of the two totals
  void validate_dims() const;    // shape only; marginals may be absent
  void validate() const;
};

// x[i][a] = copies of item a assigned to agent i.
struct Allocation {
  std::vector<std::vector<int>> x;
  bool maximal = false;

  long long total() const;
};

struct Violation {
  enum class Kind { UnitSum, Range };
  Kind kind = Kind::UnitSum;
  int agent = -1;
  int item = -1;
  int copy = 0;  // 0 in the one-sided setting
  double value = 0;

  std::string describe() const;
};

// sw(A, u) = sum_i u_i(A_i).
double social_welfare(const Matching& matching, const UtilityProfile& profile);

// sw(X, u) = sum_i sum_a u+_i(a, x_i(a)). Throws when X violates a
// capacity or supply, naming the offending index.
double allocation_welfare(const Allocation& alloc, const GeneralizedInstance& inst);

// Returns the unit-sum/range violations (empty list when valid).
std::vector<Violation> validate_profile(const UtilityProfile& profile);
std::vector<Violation> validate_profile(const GeneralizedInstance& inst);

}  // namespace threshmatch
