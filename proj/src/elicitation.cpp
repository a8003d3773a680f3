#include "threshmatch/elicitation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace threshmatch {

namespace {

// Level k in [1, t] such that tau_{k-1} >= u > tau_k, or 0 when u <= tau_t.
int classify(double u, const ThresholdVector& taus) {
  if (u <= taus.last()) return 0;
  for (int k = 1; k <= taus.t(); ++k) {
    if (u > taus.tau(k)) return k;
  }
  return 0;  // unreachable
}

std::string member_name(ProfileKind kind, const ApprovalMember& mem) {
  std::ostringstream os;
  if (kind == ProfileKind::OneSided) {
    os << "item " << mem.item;
  } else {
    os << "pair (" << mem.item << "," << mem.copy << ")";
  }
  return os.str();
}

}  // namespace

InputProfile elicit(const UtilityProfile& profile, const ThresholdVector& taus) {
  taus.validate();
  InputProfile input;
  input.kind = ProfileKind::OneSided;
  input.t = taus.t();
  input.sets.assign(profile.agents(),
                    std::vector<std::vector<ApprovalMember>>(taus.t()));
  for (int i = 0; i < profile.agents(); ++i) {
    for (int j = 0; j < profile.items(); ++j) {
      int k = classify(profile.u[i][j], taus);
      if (k > 0) input.sets[i][k - 1].push_back({j, 1});
    }
  }
  return input;
}

InputProfile elicit(const GeneralizedInstance& inst, const ThresholdVector& taus) {
  taus.validate();
  inst.validate_dims();
  InputProfile input;
  input.kind = ProfileKind::Generalized;
  input.t = taus.t();
  input.sets.assign(inst.n, std::vector<std::vector<ApprovalMember>>(taus.t()));
  for (int i = 0; i < inst.n; ++i) {
    for (int a = 0; a < inst.m; ++a) {
      for (int j = 1; j <= inst.pair_depth(i, a); ++j) {
        int k = classify(inst.marginals[i][a][j - 1], taus);
        if (k > 0) input.sets[i][k - 1].push_back({a, j});
      }
    }
  }
  return input;
}

namespace {

// Shared closure check: utility lookup abstracted so both settings reuse it.
template <typename Lookup>
ConsistencyCheck check_consistency(const InputProfile& input, const ThresholdVector& taus,
                                   int agents, const std::vector<std::vector<ApprovalMember>>& universe,
                                   Lookup&& utility) {
  for (int i = 0; i < agents; ++i) {
    std::vector<char> listed;  // indexed in universe order
    listed.assign(universe[i].size(), 0);
    for (int k = 1; k <= input.t; ++k) {
      for (const auto& mem : input.sets[i][k - 1]) {
        auto it = std::lower_bound(universe[i].begin(), universe[i].end(), mem);
        if (it == universe[i].end() || !(*it == mem)) {
          return {false, "agent " + std::to_string(i) + " approves invalid " +
                             member_name(input.kind, mem)};
        }
        listed[it - universe[i].begin()] = 1;
        double u = utility(i, mem);
        if (u > taus.tau(k - 1) + kBoundaryTol || u <= taus.tau(k) - kBoundaryTol) {
          std::ostringstream os;
          os << "agent " << i << " level " << k << " " << member_name(input.kind, mem)
             << " has utility " << u << " outside (" << taus.tau(k) << ", "
             << taus.tau(k - 1) << "]";
          return {false, os.str()};
        }
      }
    }
    for (size_t idx = 0; idx < universe[i].size(); ++idx) {
      if (listed[idx]) continue;
      double u = utility(i, universe[i][idx]);
      if (u > taus.last() + kBoundaryTol) {
        std::ostringstream os;
        os << "agent " << i << " unlisted " << member_name(input.kind, universe[i][idx])
           << " has utility " << u << " > tau_t = " << taus.last();
        return {false, os.str()};
      }
    }
  }
  return {true, ""};
}

}  // namespace

ConsistencyCheck is_consistent(const UtilityProfile& profile, const InputProfile& input,
                               const ThresholdVector& taus) {
  if (input.kind != ProfileKind::OneSided)
    throw std::invalid_argument("one-sided consistency check needs a one-sided profile");
  if (input.agents() != profile.agents())
    throw std::invalid_argument("profile and input agent counts do not match");
  std::vector<std::vector<ApprovalMember>> universe(profile.agents());
  for (int i = 0; i < profile.agents(); ++i)
    for (int j = 0; j < profile.items(); ++j) universe[i].push_back({j, 1});
  return check_consistency(input, taus, profile.agents(), universe,
                           [&](int i, const ApprovalMember& mem) { return profile.u[i][mem.item]; });
}

ConsistencyCheck is_consistent(const GeneralizedInstance& inst, const InputProfile& input,
                               const ThresholdVector& taus) {
  if (input.kind != ProfileKind::Generalized)
    throw std::invalid_argument("generalized consistency check needs a generalized profile");
  if (input.agents() != inst.n)
    throw std::invalid_argument("instance and input agent counts do not match");
  std::vector<std::vector<ApprovalMember>> universe(inst.n);
  for (int i = 0; i < inst.n; ++i)
    for (int a = 0; a < inst.m; ++a)
      for (int j = 1; j <= inst.pair_depth(i, a); ++j) universe[i].push_back({a, j});
  return check_consistency(input, taus, inst.n, universe,
                           [&](int i, const ApprovalMember& mem) {
                             return inst.marginals[i][mem.item][mem.copy - 1];
                           });
}

namespace {

bool feasible_agent(const std::vector<std::vector<ApprovalMember>>& levels,
                    const ThresholdVector& taus, size_t universe_size) {
  double lo_sum = 0, hi_sum = 0;
  size_t listed = 0;
  for (int k = 1; k <= taus.t(); ++k) {
    lo_sum += taus.tau(k) * static_cast<double>(levels[k - 1].size());
    hi_sum += taus.tau(k - 1) * static_cast<double>(levels[k - 1].size());
    listed += levels[k - 1].size();
  }
  hi_sum += taus.last() * static_cast<double>(universe_size - listed);
  return lo_sum <= 1.0 + kUnitSumTol && hi_sum >= 1.0 - kUnitSumTol;
}

}  // namespace

bool feasible(const InputProfile& input, const ThresholdVector& taus, int items) {
  for (int i = 0; i < input.agents(); ++i) {
    if (!feasible_agent(input.sets[i], taus, static_cast<size_t>(items))) return false;
  }
  return true;
}

bool feasible(const InputProfile& input, const ThresholdVector& taus,
              const std::vector<int>& capacities, const std::vector<int>& supplies) {
  for (int i = 0; i < input.agents(); ++i) {
    size_t universe = 0;
    for (int a = 0; a < static_cast<int>(supplies.size()); ++a)
      universe += static_cast<size_t>(std::min(capacities[i], supplies[a]));
    if (!feasible_agent(input.sets[i], taus, universe)) return false;
  }
  return true;
}

}  // namespace threshmatch
