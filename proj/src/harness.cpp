#include "threshmatch/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "threshmatch/bipartite.hpp"
#include "threshmatch/elicitation.hpp"
#include "threshmatch/generalized.hpp"
#include "threshmatch/mechanisms.hpp"
#include "threshmatch/rng.hpp"
#include "threshmatch/sampling.hpp"

namespace threshmatch {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double optimal_matching_welfare(const UtilityProfile& profile) {
  WeightedBipartiteGraph g;
  g.left_count = profile.agents();
  g.right_count = profile.items();
  for (int i = 0; i < profile.agents(); ++i)
    for (int j = 0; j < profile.items(); ++j)
      if (profile.u[i][j] > 0) g.add_edge(i, j, profile.u[i][j]);
  return max_weight_matching(g).weight;
}

namespace {

SweepRow run_trial(int n, int t, const std::string& mechanism, int trial, uint64_t seed) {
  SweepRow row;
  row.n = n;
  row.t = t;
  row.mechanism = mechanism;
  row.trial = trial;
  row.seed = seed;

  Rng rng(seed);
  UtilityProfile profile = random_unit_sum_profile(n, rng);

  MechanismConfig config;
  config.t = t;
  if (mechanism == "ft") {
    config.delta = ft_default_delta(n, t);
    config.mode = MechanismMode::Deterministic;
  } else if (mechanism == "rt") {
    config.delta = rt_default_delta(n, t);
    config.mode = MechanismMode::Randomized;
    config.seed = seed;
  } else {
    throw std::invalid_argument("sweep supports the one-sided mechanisms ft and rt");
  }
  row.delta = config.delta;

  ThresholdVector taus = config.taus();
  InputProfile input = elicit(profile, taus);

  std::vector<std::vector<double>> p;
  if (mechanism == "ft") {
    Matching a = run_ft(input, config);
    p = matching_indicator(a);
    row.welfare = social_welfare(a, profile);
  } else {
    p = rt_distribution(input, config);
    double expected = 0;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) expected += p[i][a] * profile.u[i][a];
    row.welfare = expected;
  }
  row.optimal_welfare = optimal_matching_welfare(profile);

  DistortionResult dist = exact_distortion(p, input, taus);
  row.distortion = dist.distortion;
  row.unbounded = dist.unbounded;
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepParams& params) {
  std::vector<SweepRow> rows;
  uint64_t counter = 0;
  for (int n : params.n_values) {
    for (int t : params.t_values) {
      for (const std::string& mech : params.mechanisms) {
        for (int trial = 0; trial < params.trials; ++trial) {
          uint64_t seed = child_seed(params.master_seed, counter++);
          auto started = std::chrono::steady_clock::now();
          SweepRow row;
          try {
            row = run_trial(n, t, mech, trial, seed);
          } catch (const std::exception& e) {
            row.n = n;
            row.t = t;
            row.mechanism = mech;
            row.trial = trial;
            row.seed = seed;
            row.error = e.what();
          }
          if (params.timing) {
            auto elapsed = std::chrono::steady_clock::now() - started;
            row.runtime_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    os << row.n << ',' << row.t << ',' << format_double(row.delta) << ',' << row.mechanism
       << ',' << row.trial << ',' << row.seed << ',';
    if (row.error.empty()) {
      os << (row.unbounded ? "+inf" : format_double(row.distortion)) << ','
         << format_double(row.welfare) << ',' << format_double(row.optimal_welfare) << ',';
    } else {
      os << ",,,";
    }
    if (row.runtime_ms >= 0) os << row.runtime_ms;
    os << ',';
    std::string err = row.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    os << err << '\n';
  }
  return os.str();
}

DistortionRecord run_distortion_pipeline(const Instance& inst, const std::string& mechanism,
                                         int t, double delta, uint64_t seed) {
  DistortionRecord record;
  MechanismConfig config;
  config.t = t;
  config.seed = seed;

  if (mechanism == "ft" || mechanism == "rt") {
    if (inst.kind != ProfileKind::OneSided)
      throw std::invalid_argument("mechanism " + mechanism + " needs a one-sided instance");
    const int n = inst.one_sided.agents();
    config.delta = delta > 0 ? delta
                             : (mechanism == "ft" ? ft_default_delta(n, t)
                                                  : rt_default_delta(n, t));
    config.mode = mechanism == "ft" ? MechanismMode::Deterministic : MechanismMode::Randomized;
    ThresholdVector taus = config.taus();
    InputProfile input = elicit(inst.one_sided, taus);
    std::vector<std::vector<double>> p = mechanism == "ft"
                                             ? matching_indicator(run_ft(input, config))
                                             : rt_distribution(input, config);
    DistortionResult dist = exact_distortion(p, input, taus);
    record.distortion = dist.distortion;
    record.unbounded = dist.unbounded;
    if (!dist.witness_u.empty()) {
      UtilityProfile witness;
      witness.u = dist.witness_u;
      double expected = 0;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) expected += p[i][a] * witness.u[i][a];
      record.welfare = expected;
      record.optimal_welfare = social_welfare(dist.best_alternative, witness);
    }
    record.witness_json = witness_to_json(dist.distortion, dist.unbounded, dist.witness_u,
                                          dist.best_alternative.assign, {});
    return record;
  }

  if (mechanism == "gt" || mechanism == "grt") {
    if (inst.kind != ProfileKind::Generalized)
      throw std::invalid_argument("mechanism " + mechanism + " needs a generalized instance");
    const GeneralizedInstance& gen = inst.generalized;
    config.delta = delta > 0 ? delta
                             : (mechanism == "gt" ? gt_default_delta(gen.total(), t)
                                                  : grt_default_delta(gen.total(), t));
    config.mode = mechanism == "gt" ? MechanismMode::Deterministic : MechanismMode::Randomized;
    ThresholdVector taus = config.taus();
    InputProfile input = elicit(gen, taus);
    Allocation gt_out = run_gt(input, gen, config).allocation;
    std::vector<std::vector<double>> den = mechanism == "gt"
                                               ? allocation_coeffs(gt_out, gen)
                                               : grt_denominator_coeffs(gt_out, gen);
    GenDistortionResult dist = exact_distortion(den, input, taus, gen);
    record.distortion = dist.distortion;
    record.unbounded = dist.unbounded;
    if (!dist.witness_u.empty()) {
      double expected = 0, optimal = 0;
      GenCoordMap map = GenCoordMap::of(gen);
      auto alt = allocation_coeffs(dist.best_alternative, gen);
      for (int i = 0; i < gen.n; ++i) {
        for (int c = 0; c < map.size[i]; ++c) {
          expected += den[i][c] * dist.witness_u[i][c];
          optimal += alt[i][c] * dist.witness_u[i][c];
        }
      }
      record.welfare = expected;
      record.optimal_welfare = optimal;
    }
    record.witness_json = witness_to_json(dist.distortion, dist.unbounded, dist.witness_u, {},
                                          dist.best_alternative.x);
    return record;
  }

  throw std::invalid_argument("unknown mechanism: " + mechanism);
}

}  // namespace threshmatch
