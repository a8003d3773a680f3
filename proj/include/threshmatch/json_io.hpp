#pragma once

#include <string>
#include <vector>

#include "threshmatch/core.hpp"

namespace threshmatch {

// A parsed instance file: either one-sided utilities or a generalized
// instance. File schema:
//   {"kind": "one_sided" | "generalized", "n": ..., "m": ...,
//    "capacities": [...], "supplies": [...], "utilities": ...,
//    "limits": optional}
struct Instance {
  ProfileKind kind = ProfileKind::OneSided;
  UtilityProfile one_sided;
  GeneralizedInstance generalized;

  int agents() const {
    return kind == ProfileKind::OneSided ? one_sided.agents() : generalized.n;
  }
};

Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

// An input profile file:
//   {"kind": ..., "t": ..., "taus": [...], "sets": [...],
//    "instance": {dims of the underlying instance}}
// One-sided sets serialize as item arrays, generalized ones as
// [item, copy] pairs.
struct ProfileFile {
  InputProfile input;
  ThresholdVector taus;
  int n = 0;                        // one-sided agent/item count
  GeneralizedInstance dims;         // generalized dims (marginals empty)
};

ProfileFile load_profile(const std::string& path);
ProfileFile parse_profile(const std::string& text);
std::string profile_to_json(const ProfileFile& pf);
void save_profile(const ProfileFile& pf, const std::string& path);

std::string matching_to_json(const Matching& matching, double v_welfare);
std::string allocation_to_json(const Allocation& alloc, double v_welfare);

// Witness of a distortion computation: the ratio, the best alternative, and
// the utility profile attaining it.
std::string witness_to_json(double distortion, bool unbounded,
                            const std::vector<std::vector<double>>& witness_u,
                            const std::vector<int>& alternative_matching,
                            const std::vector<std::vector<int>>& alternative_allocation);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace threshmatch
