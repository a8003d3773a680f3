#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "threshmatch/core.hpp"
#include "threshmatch/json_io.hpp"
#include "threshmatch/oracle.hpp"

namespace threshmatch {

// Stable decimal formatting shared by the CSV writer and reports.
std::string format_double(double v);

struct SweepParams {
  std::vector<int> n_values;
  std::vector<int> t_values;
  std::vector<std::string> mechanisms;  // "ft" and/or "rt"
  int trials = 1;
  uint64_t master_seed = 0;
  // Wall time is only recorded on request: the runtime column would
  // otherwise break byte-identical reruns.
  bool timing = false;
};

struct SweepRow {
  int n = 0, t = 0;
  double delta = 0;
  std::string mechanism;
  int trial = 0;
  uint64_t seed = 0;
  double distortion = 0;
  bool unbounded = false;
  double welfare = 0;
  double optimal_welfare = 0;
  long long runtime_ms = -1;  // -1 = not timed
  std::string error;          // nonempty when this trial failed
};

// Rows in deterministic (n, t, mechanism, trial) order; trial k of the whole
// sweep uses child_seed(master, k). Failures land in the error column and
// the sweep continues.
std::vector<SweepRow> run_sweep(const SweepParams& params);

inline constexpr const char* kSweepCsvHeader =
    "n,t,delta,mechanism,trial,seed,distortion,welfare,optimal_welfare,runtime_ms,error";

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct DistortionRecord {
  double distortion = 0;
  bool unbounded = false;
  double welfare = 0;          // mechanism welfare under the witness profile
  double optimal_welfare = 0;  // best alternative welfare under the witness
  std::string witness_json;
};

// End-to-end pipeline: elicit from the instance, run the mechanism, hand the
// exact assignment distribution to the oracle.
DistortionRecord run_distortion_pipeline(const Instance& inst, const std::string& mechanism,
                                         int t, double delta, uint64_t seed);

// Exact maximum welfare over all matchings of a utility profile.
double optimal_matching_welfare(const UtilityProfile& profile);

}  // namespace threshmatch
