#include "threshmatch/core.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace threshmatch {

OneSidedInstance OneSidedInstance::of_size(int n) {
  OneSidedInstance inst;
  inst.n = n;
  inst.item_labels.reserve(n);
  for (int j = 0; j < n; ++j) inst.item_labels.push_back(std::to_string(j));
  return inst;
}

void OneSidedInstance::validate() const {
  if (n < 1) throw std::invalid_argument("one-sided instance needs n >= 1");
  if (!item_labels.empty()) {
    if (static_cast<int>(item_labels.size()) != n)
      throw std::invalid_argument("item label count must equal n");
    std::set<std::string> seen(item_labels.begin(), item_labels.end());
    if (static_cast<int>(seen.size()) != n)
      throw std::invalid_argument("item labels must be distinct");
  }
}

double ThresholdVector::tau(int k) const {
  if (k == 0) return 1.0;
  return taus.at(k - 1);
}

void ThresholdVector::validate() const {
  if (taus.empty()) throw std::invalid_argument("threshold vector needs t >= 1");
  double prev = 1.0;
  for (double v : taus) {
    if (!(v > 0.0 && v < prev))
      throw std::invalid_argument("thresholds must satisfy 1 > tau_1 > ... > tau_t > 0");
    prev = v;
  }
}

ThresholdVector ThresholdVector::geometric(double delta, int t) {
  if (!(delta > 1.0)) throw std::invalid_argument("geometric thresholds need delta > 1");
  if (t < 1) throw std::invalid_argument("geometric thresholds need t >= 1");
  ThresholdVector tv;
  tv.taus.reserve(t);
  for (int k = 1; k <= t; ++k) tv.taus.push_back(std::pow(delta, -k));
  tv.validate();
  return tv;
}

bool InputProfile::all_empty() const {
  for (const auto& agent : sets)
    for (const auto& level : agent)
      if (!level.empty()) return false;
  return true;
}

void InputProfile::validate_shape() const {
  if (t < 1) throw std::invalid_argument("input profile needs t >= 1");
  for (int i = 0; i < agents(); ++i) {
    if (static_cast<int>(sets[i].size()) != t)
      throw std::invalid_argument("agent " + std::to_string(i) + " does not have t approval sets");
    std::set<ApprovalMember> seen;
    for (const auto& level : sets[i]) {
      for (const auto& mem : level) {
        if (!seen.insert(mem).second)
          throw std::invalid_argument("approval sets of agent " + std::to_string(i) +
                                      " are not disjoint");
      }
    }
  }
}

void Matching::validate_bijection() const {
  const int n = size();
  std::vector<char> hit(n, 0);
  for (int i = 0; i < n; ++i) {
    int a = assign[i];
    if (a < 0 || a >= n || hit[a])
      throw std::invalid_argument("matching is not a bijection");
    hit[a] = 1;
  }
}

std::vector<int> Matching::inverse() const {
  std::vector<int> inv(size(), -1);
  for (int i = 0; i < size(); ++i) inv[assign[i]] = i;
  return inv;
}

long long GeneralizedInstance::total_capacity() const {
  return std::accumulate(capacities.begin(), capacities.end(), 0LL);
}

long long GeneralizedInstance::total_supply() const {
  return std::accumulate(supplies.begin(), supplies.end(), 0LL);
}

long long GeneralizedInstance::total() const {
  return std::max(total_capacity(), total_supply());
}

long long GeneralizedInstance::assignable() const {
  return std::min(total_capacity(), total_supply());
}

void GeneralizedInstance::validate_dims() const {
  if (n < 1 || m < 1) throw std::invalid_argument("generalized instance needs n, m >= 1");
  if (static_cast<int>(capacities.size()) != n ||
      static_cast<int>(supplies.size()) != m)
    throw std::invalid_argument("capacity/supply vector lengths must match n/m");
  for (int c : capacities)
    if (c < 1) throw std::invalid_argument("capacities must be >= 1");
  for (int s : supplies)
    if (s < 1) throw std::invalid_argument("supplies must be >= 1");
  if (!copy_limits.empty()) {
    if (static_cast<int>(copy_limits.size()) != n)
      throw std::invalid_argument("copy limit matrix must have n rows");
    for (const auto& row : copy_limits) {
      if (static_cast<int>(row.size()) != m)
        throw std::invalid_argument("copy limit matrix must have m columns");
      for (int l : row)
        if (l < 0) throw std::invalid_argument("copy limits must be >= 0");
    }
  }
}

void GeneralizedInstance::validate() const {
  validate_dims();
  if (static_cast<int>(marginals.size()) != n)
    throw std::invalid_argument("marginal matrix must have n rows");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(marginals[i].size()) != m)
      throw std::invalid_argument("marginal matrix must have m columns");
    for (int a = 0; a < m; ++a) {
      if (static_cast<int>(marginals[i][a].size()) != pair_depth(i, a))
        throw std::invalid_argument("marginals of pair (" + std::to_string(i) + "," +
                                    std::to_string(a) + ") must cover min(c_i, m_a) copies");
    }
  }
}

long long Allocation::total() const {
  long long s = 0;
  for (const auto& row : x)
    for (int v : row) s += v;
  return s;
}

std::string Violation::describe() const {
  std::ostringstream os;
  if (kind == Kind::UnitSum) {
    os << "unit-sum: agent " << agent << " sums to " << value;
  } else {
    os << "range: agent " << agent << " item " << item;
    if (copy > 0) os << " copy " << copy;
    os << " has utility " << value;
  }
  return os.str();
}

double social_welfare(const Matching& matching, const UtilityProfile& profile) {
  if (matching.size() != profile.agents() || profile.agents() != profile.items())
    throw std::invalid_argument("matching and profile dimensions do not match");
  double w = 0;
  for (int i = 0; i < matching.size(); ++i) w += profile.u[i][matching.assign[i]];
  return w;
}

double allocation_welfare(const Allocation& alloc, const GeneralizedInstance& inst) {
  if (static_cast<int>(alloc.x.size()) != inst.n)
    throw std::invalid_argument("allocation row count does not match agent count");
  std::vector<long long> item_use(inst.m, 0);
  double w = 0;
  for (int i = 0; i < inst.n; ++i) {
    if (static_cast<int>(alloc.x[i].size()) != inst.m)
      throw std::invalid_argument("allocation column count does not match item count");
    long long used = 0;
    for (int a = 0; a < inst.m; ++a) {
      int c = alloc.x[i][a];
      if (c < 0) throw std::invalid_argument("negative copy count at (" + std::to_string(i) +
                                             "," + std::to_string(a) + ")");
      used += c;
      item_use[a] += c;
      for (int j = 0; j < c; ++j) w += inst.marginals[i][a][j];
    }
    if (used > inst.capacities[i])
      throw std::invalid_argument("capacity violated for agent " + std::to_string(i));
  }
  for (int a = 0; a < inst.m; ++a)
    if (item_use[a] > inst.supplies[a])
      throw std::invalid_argument("supply violated for item " + std::to_string(a));
  return w;
}

std::vector<Violation> validate_profile(const UtilityProfile& profile) {
  std::vector<Violation> out;
  for (int i = 0; i < profile.agents(); ++i) {
    double sum = 0;
    for (int j = 0; j < profile.items(); ++j) {
      double v = profile.u[i][j];
      if (v < -kUnitSumTol || v > 1.0 + kUnitSumTol)
        out.push_back({Violation::Kind::Range, i, j, 0, v});
      sum += v;
    }
    if (std::fabs(sum - 1.0) > kUnitSumTol)
      out.push_back({Violation::Kind::UnitSum, i, -1, 0, sum});
  }
  return out;
}

std::vector<Violation> validate_profile(const GeneralizedInstance& inst) {
  std::vector<Violation> out;
  for (int i = 0; i < inst.n; ++i) {
    double sum = 0;
    for (int a = 0; a < inst.m; ++a) {
      for (int j = 0; j < inst.pair_depth(i, a); ++j) {
        double v = inst.marginals[i][a][j];
        if (v < -kUnitSumTol || v > 1.0 + kUnitSumTol)
          out.push_back({Violation::Kind::Range, i, a, j + 1, v});
        sum += v;
      }
    }
    if (std::fabs(sum - 1.0) > kUnitSumTol)
      out.push_back({Violation::Kind::UnitSum, i, -1, 0, sum});
  }
  return out;
}

}  // namespace threshmatch
