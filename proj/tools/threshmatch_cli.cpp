// Batch experiment driver for the threshold-approval matching mechanisms:
// elicitation, mechanism runs, exact distortion, parameter sweeps, the
// adversarial fixture generators, and flow-network dumps.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "threshmatch/adversarial.hpp"
#include "threshmatch/elicitation.hpp"
#include "threshmatch/generalized.hpp"
#include "threshmatch/harness.hpp"
#include "threshmatch/json_io.hpp"
#include "threshmatch/mechanisms.hpp"
#include "threshmatch/oracle.hpp"

using namespace threshmatch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSizeLimit = 3;

std::vector<int> parse_range(const std::string& text) {
  auto colon = text.find(':');
  int from, to;
  if (colon == std::string::npos) {
    from = to = std::stoi(text);
  } else {
    from = std::stoi(text.substr(0, colon));
    to = std::stoi(text.substr(colon + 1));
  }
  if (from < 1 || to < from) throw CLI::ValidationError("range", "expected a:b with 1 <= a <= b");
  std::vector<int> out;
  for (int v = from; v <= to; ++v) out.push_back(v);
  return out;
}

double default_delta(const Instance& inst, const std::string& mechanism, int t) {
  if (inst.kind == ProfileKind::OneSided) {
    int n = inst.one_sided.agents();
    return mechanism == "rt" ? rt_default_delta(n, t) : ft_default_delta(n, t);
  }
  long long T = inst.generalized.total();
  return mechanism == "grt" ? grt_default_delta(T, t) : gt_default_delta(T, t);
}

int cmd_elicit(const std::string& instance_path, int t, double delta,
               const std::string& out_path) {
  Instance inst = load_instance(instance_path);
  if (delta <= 0) delta = default_delta(inst, "ft", t);
  ThresholdVector taus = ThresholdVector::geometric(delta, t);

  ProfileFile pf;
  pf.taus = taus;
  if (inst.kind == ProfileKind::OneSided) {
    pf.input = elicit(inst.one_sided, taus);
    pf.n = inst.one_sided.agents();
  } else {
    pf.input = elicit(inst.generalized, taus);
    pf.dims = inst.generalized;
    pf.dims.marginals.clear();
  }
  save_profile(pf, out_path);

  bool ok = inst.kind == ProfileKind::OneSided
                ? feasible(pf.input, taus, pf.n)
                : feasible(pf.input, taus, pf.dims.capacities, pf.dims.supplies);
  std::cout << "wrote " << out_path << "\n";
  std::cout << "feasibility: " << (ok ? "feasible" : "infeasible") << "\n";
  if (!ok) std::cerr << "warning: thresholds admit no unit-sum consistent profile\n";
  return kExitOk;
}

int cmd_run(const std::string& profile_path, const std::string& mechanism, uint64_t seed,
            const std::string& out_path) {
  ProfileFile pf = load_profile(profile_path);
  const bool one_sided_mech = mechanism == "ft" || mechanism == "rt";
  if (one_sided_mech != (pf.input.kind == ProfileKind::OneSided))
    throw std::invalid_argument("mechanism " + mechanism +
                                " does not match the profile kind");

  auto started = std::chrono::steady_clock::now();
  std::string artifact;
  double v_welfare = 0;
  if (one_sided_mech) {
    Matching result;
    if (mechanism == "ft") {
      result = run_ft(pf.input, pf.taus);
    } else {
      Rng rng(seed);
      result = run_rt(pf.input, pf.taus, rng);
    }
    v_welfare = matching_graph_weight(result, pf.input, pf.taus);
    artifact = matching_to_json(result, v_welfare);
  } else {
    Allocation result;
    if (mechanism == "gt") {
      GtResult gt = run_gt(pf.input, pf.dims, pf.taus);
      result = gt.allocation;
      v_welfare = gt.v_welfare;
    } else {
      Rng rng(seed);
      result = run_grt(pf.input, pf.dims, pf.taus, rng);
      auto values = values_from_profile(pf.input, pf.taus, pf.dims);
      v_welfare = 0;
      for (int i = 0; i < pf.dims.n; ++i)
        for (int a = 0; a < pf.dims.m; ++a)
          for (int j = 0; j < result.x[i][a]; ++j) v_welfare += values[i][a][j];
    }
    artifact = allocation_to_json(result, v_welfare);
  }
  auto elapsed = std::chrono::steady_clock::now() - started;

  write_text(out_path, artifact);
  std::cout << "wrote " << out_path << "\n";
  std::cout << "v_welfare: " << format_double(v_welfare) << "\n";
  std::cout << "runtime_ms: "
            << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << "\n";
  return kExitOk;
}

int cmd_distortion(const std::string& instance_path, const std::string& mechanism, int t,
                   double delta, uint64_t seed, const std::string& witness_path) {
  Instance inst = load_instance(instance_path);
  DistortionRecord record = run_distortion_pipeline(inst, mechanism, t, delta, seed);
  std::cout << "distortion: " << (record.unbounded ? "+inf" : format_double(record.distortion))
            << "\n";
  std::cout << "welfare: " << format_double(record.welfare) << "\n";
  std::cout << "optimal_welfare: " << format_double(record.optimal_welfare) << "\n";
  if (!witness_path.empty()) {
    write_text(witness_path, record.witness_json);
    std::cout << "witness: " << witness_path << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& n_range, const std::string& t_range,
              const std::string& mechanisms, int trials, uint64_t seed, bool timing,
              const std::string& out_path) {
  SweepParams params;
  params.n_values = parse_range(n_range);
  params.t_values = parse_range(t_range);
  std::string token;
  for (char c : mechanisms + ",") {
    if (c == ',') {
      if (!token.empty()) params.mechanisms.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  for (const auto& m : params.mechanisms)
    if (m != "ft" && m != "rt")
      throw CLI::ValidationError("--mechanisms", "sweep supports ft and rt");
  if (params.n_values.back() > kMaxOneSidedOracleAgents)
    throw SizeLimitError("sweep n-range exceeds the exact oracle limit of " +
                         std::to_string(kMaxOneSidedOracleAgents));
  params.trials = trials;
  params.master_seed = seed;
  params.timing = timing;

  std::string csv = sweep_csv(run_sweep(params));
  write_text(out_path, csv);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_gen_adversarial(const std::string& family, int n, int t, double delta, int k,
                        const std::string& mechanism, const std::string& prefix) {
  ThresholdVector taus = ThresholdVector::geometric(delta, t);
  MechanismConfig config;
  config.t = t;
  config.delta = delta;

  Instance inst;
  inst.kind = ProfileKind::OneSided;
  ProfileFile pf;
  pf.taus = taus;
  pf.n = n;

  if (family == "gap") {
    if (k <= 0) k = max_gap_index(taus);
    InputProfile profile = gap_input_profile(taus, k, n);
    std::vector<std::vector<double>> p = mechanism == "rt"
                                             ? rt_distribution(profile, config)
                                             : matching_indicator(run_ft(profile, config));
    GapInstance gap = gen_gap_instance(taus, k, n, p);
    inst.one_sided = gap.utilities;
    pf.input = gap.input;
    std::cout << "gap instance: k=" << gap.k << " k'=" << gap.k_prime << " m=" << gap.m
              << " a*=" << gap.a_star << "\n";
  } else if (family == "empty-det") {
    pf.input = empty_profile(n, t);
    Matching a = run_ft(pf.input, config);
    inst.one_sided = gen_empty_det_adversary(taus, n, a);
  } else if (family == "empty-rand") {
    pf.input = empty_profile(n, t);
    inst.one_sided = gen_empty_rand_adversary(taus, n, rt_distribution(pf.input, config));
  } else {
    throw CLI::ValidationError("--family", "expected gap, empty-det, or empty-rand");
  }

  save_instance(inst, prefix + "_instance.json");
  save_profile(pf, prefix + "_profile.json");
  std::cout << "wrote " << prefix << "_instance.json and " << prefix << "_profile.json\n";
  return kExitOk;
}

int cmd_flow_dump(const std::string& profile_path, const std::string& out_path) {
  ProfileFile pf = load_profile(profile_path);
  if (pf.input.kind != ProfileKind::Generalized)
    throw std::invalid_argument("flow-dump needs a generalized input profile");
  auto values = values_from_profile(pf.input, pf.taus, pf.dims);
  FlowNetwork net = build_network(pf.dims.capacities, pf.dims.supplies, values);
  write_text(out_path, net.dump());
  std::cout << "wrote " << out_path << " (" << net.arcs.size() << " arcs, "
            << net.node_count << " nodes, F=" << net.required_flow << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"threshold-approval matching mechanisms and distortion harness"};
  app.require_subcommand(1);

  std::string instance_path, profile_path, out_path, witness_path, prefix;
  std::string mechanism = "ft", mechanisms = "ft", family = "gap";
  std::string n_range = "3:5", t_range = "1:2";
  int t = 1, n = 4, k = 0, trials = 1;
  double delta = 0;
  uint64_t seed = 0;
  bool timing = false;

  auto* elicit_cmd = app.add_subcommand("elicit", "derive threshold approvals from utilities");
  elicit_cmd->add_option("instance", instance_path)->required();
  elicit_cmd->add_option("--t", t, "threshold count")->required();
  elicit_cmd->add_option("--delta", delta, "threshold ratio (default: the worst-case-optimal choice)");
  elicit_cmd->add_option("-o,--out", out_path)->required();

  auto* run_cmd = app.add_subcommand("run", "run a mechanism on an input profile");
  run_cmd->add_option("profile", profile_path)->required();
  run_cmd->add_option("--mechanism", mechanism)->required()
      ->check(CLI::IsMember({"ft", "rt", "gt", "grt"}));
  run_cmd->add_option("--seed", seed);
  run_cmd->add_option("-o,--out", out_path)->required();

  auto* dist_cmd = app.add_subcommand("distortion", "exact distortion of a mechanism run");
  dist_cmd->add_option("instance", instance_path)->required();
  dist_cmd->add_option("--mechanism", mechanism)->required()
      ->check(CLI::IsMember({"ft", "rt", "gt", "grt"}));
  dist_cmd->add_option("--t", t)->required();
  dist_cmd->add_option("--delta", delta);
  dist_cmd->add_option("--seed", seed);
  dist_cmd->add_option("--witness", witness_path, "where to save the (B, u) witness");

  auto* sweep_cmd = app.add_subcommand("sweep", "distortion sweep over n, t, mechanisms");
  sweep_cmd->add_option("--n-range", n_range, "a:b inclusive");
  sweep_cmd->add_option("--t-range", t_range, "a:b inclusive");
  sweep_cmd->add_option("--mechanisms", mechanisms, "comma list of ft,rt");
  sweep_cmd->add_option("--trials", trials)->required();
  sweep_cmd->add_option("--seed", seed, "master seed");
  sweep_cmd->add_flag("--timing", timing, "record wall time (breaks byte-identical reruns)");
  sweep_cmd->add_option("-o,--out", out_path)->required();

  auto* gen_cmd = app.add_subcommand("gen-adversarial", "lower-bound fixture generators");
  gen_cmd->add_option("--family", family)->required()
      ->check(CLI::IsMember({"gap", "empty-det", "empty-rand"}));
  gen_cmd->add_option("--n", n)->required();
  gen_cmd->add_option("--t", t)->required();
  gen_cmd->add_option("--delta", delta)->required();
  gen_cmd->add_option("--k", k, "gap level (default: largest threshold gap)");
  gen_cmd->add_option("--mechanism", mechanism, "whose probabilities parameterize the gap")
      ->check(CLI::IsMember({"ft", "rt"}));
  gen_cmd->add_option("--out-prefix", prefix)->required();

  auto* dump_cmd = app.add_subcommand("flow-dump", "dump the G(C,M,V) arc list");
  dump_cmd->add_option("profile", profile_path)->required();
  dump_cmd->add_option("-o,--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (elicit_cmd->parsed()) return cmd_elicit(instance_path, t, delta, out_path);
    if (run_cmd->parsed()) return cmd_run(profile_path, mechanism, seed, out_path);
    if (dist_cmd->parsed())
      return cmd_distortion(instance_path, mechanism, t, delta, seed, witness_path);
    if (sweep_cmd->parsed())
      return cmd_sweep(n_range, t_range, mechanisms, trials, seed, timing, out_path);
    if (gen_cmd->parsed())
      return cmd_gen_adversarial(family, n, t, delta, k, mechanism, prefix);
    if (dump_cmd->parsed()) return cmd_flow_dump(profile_path, out_path);
  } catch (const SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kExitSizeLimit;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
