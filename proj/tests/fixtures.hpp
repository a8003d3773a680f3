// Shared hand-built fixtures. The 4-agent profile below elicits, with
// thresholds (0.4, 0.25), exactly the approval sets
//   S_{1,1} = {a, c},  S_{2,1} = {d},  S_{2,2} = {c},  S_{3,2} = {a, c, d},
// all others empty (items a..d are indices 0..3).
#pragma once

#include "threshmatch/core.hpp"

namespace fixtures {

inline threshmatch::ThresholdVector running_example_taus() {
  return {{0.4, 0.25}};
}

inline threshmatch::UtilityProfile running_example_profile() {
  threshmatch::UtilityProfile p;
  p.u = {
      {0.50, 0.00, 0.50, 0.00},
      {0.25, 0.00, 0.30, 0.45},
      {0.30, 0.10, 0.30, 0.30},
      {0.25, 0.25, 0.25, 0.25},
  };
  return p;
}

constexpr int kItemA = 0, kItemB = 1, kItemC = 2, kItemD = 3;

}  // namespace fixtures
