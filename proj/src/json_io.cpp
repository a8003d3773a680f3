#include "threshmatch/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace threshmatch {

using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

namespace {

GeneralizedInstance parse_generalized(const json& j) {
  GeneralizedInstance inst;
  inst.n = j.at("n").get<int>();
  inst.m = j.at("m").get<int>();
  inst.capacities = j.at("capacities").get<std::vector<int>>();
  inst.supplies = j.at("supplies").get<std::vector<int>>();
  if (j.contains("utilities"))
    inst.marginals = j.at("utilities").get<std::vector<std::vector<std::vector<double>>>>();
  if (j.contains("limits") && !j.at("limits").is_null())
    inst.copy_limits = j.at("limits").get<std::vector<std::vector<int>>>();
  inst.validate_dims();
  if (!inst.marginals.empty()) inst.validate();
  return inst;
}

json generalized_dims_json(const GeneralizedInstance& inst) {
  json j;
  j["kind"] = "generalized";
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["capacities"] = inst.capacities;
  j["supplies"] = inst.supplies;
  if (!inst.copy_limits.empty()) j["limits"] = inst.copy_limits;
  return j;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = json::parse(text);
  Instance inst;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "one_sided") {
    inst.kind = ProfileKind::OneSided;
    inst.one_sided.u = j.at("utilities").get<std::vector<std::vector<double>>>();
    int n = j.at("n").get<int>();
    if (n != inst.one_sided.agents() || n != inst.one_sided.items())
      throw std::runtime_error("one-sided utilities must be an n x n matrix");
  } else if (kind == "generalized") {
    inst.kind = ProfileKind::Generalized;
    inst.generalized = parse_generalized(j);
    if (inst.generalized.marginals.empty())
      throw std::runtime_error("generalized instance is missing utilities");
  } else {
    throw std::runtime_error("unknown instance kind: " + kind);
  }
  return inst;
}

Instance load_instance(const std::string& path) { return parse_instance(read_text(path)); }

std::string instance_to_json(const Instance& inst) {
  json j;
  if (inst.kind == ProfileKind::OneSided) {
    j["kind"] = "one_sided";
    j["n"] = inst.one_sided.agents();
    j["utilities"] = inst.one_sided.u;
  } else {
    j = generalized_dims_json(inst.generalized);
    j["utilities"] = inst.generalized.marginals;
  }
  return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text(path, instance_to_json(inst));
}

ProfileFile parse_profile(const std::string& text) {
  json j = json::parse(text);
  ProfileFile pf;
  std::string kind = j.at("kind").get<std::string>();
  pf.input.kind = (kind == "generalized") ? ProfileKind::Generalized : ProfileKind::OneSided;
  pf.input.t = j.at("t").get<int>();
  pf.taus.taus = j.at("taus").get<std::vector<double>>();
  pf.taus.validate();
  if (pf.taus.t() != pf.input.t) throw std::runtime_error("t does not match the tau count");

  const json& sets = j.at("sets");
  pf.input.sets.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    pf.input.sets[i].resize(sets[i].size());
    for (size_t k = 0; k < sets[i].size(); ++k) {
      for (const json& mem : sets[i][k]) {
        if (pf.input.kind == ProfileKind::OneSided) {
          pf.input.sets[i][k].push_back({mem.get<int>(), 1});
        } else {
          pf.input.sets[i][k].push_back({mem.at(0).get<int>(), mem.at(1).get<int>()});
        }
      }
    }
  }
  pf.input.validate_shape();

  const json& dims = j.at("instance");
  if (pf.input.kind == ProfileKind::OneSided) {
    pf.n = dims.at("n").get<int>();
    if (pf.n != pf.input.agents())
      throw std::runtime_error("profile agent count does not match the instance dims");
  } else {
    pf.dims = parse_generalized(dims);
    if (pf.dims.n != pf.input.agents())
      throw std::runtime_error("profile agent count does not match the instance dims");
  }
  return pf;
}

ProfileFile load_profile(const std::string& path) { return parse_profile(read_text(path)); }

std::string profile_to_json(const ProfileFile& pf) {
  json j;
  j["kind"] = pf.input.kind == ProfileKind::OneSided ? "one_sided" : "generalized";
  j["t"] = pf.input.t;
  j["taus"] = pf.taus.taus;
  json sets = json::array();
  for (const auto& agent : pf.input.sets) {
    json levels = json::array();
    for (const auto& level : agent) {
      json members = json::array();
      for (const auto& mem : level) {
        if (pf.input.kind == ProfileKind::OneSided) {
          members.push_back(mem.item);
        } else {
          members.push_back(json::array({mem.item, mem.copy}));
        }
      }
      levels.push_back(members);
    }
    sets.push_back(levels);
  }
  j["sets"] = sets;
  if (pf.input.kind == ProfileKind::OneSided) {
    j["instance"] = {{"kind", "one_sided"}, {"n", pf.n}};
  } else {
    j["instance"] = generalized_dims_json(pf.dims);
  }
  return j.dump(2) + "\n";
}

void save_profile(const ProfileFile& pf, const std::string& path) {
  write_text(path, profile_to_json(pf));
}

std::string matching_to_json(const Matching& matching, double v_welfare) {
  json j;
  j["assign"] = matching.assign;
  j["v_welfare"] = v_welfare;
  return j.dump(2) + "\n";
}

std::string allocation_to_json(const Allocation& alloc, double v_welfare) {
  json j;
  j["x"] = alloc.x;
  j["maximal"] = alloc.maximal;
  j["v_welfare"] = v_welfare;
  return j.dump(2) + "\n";
}

std::string witness_to_json(double distortion, bool unbounded,
                            const std::vector<std::vector<double>>& witness_u,
                            const std::vector<int>& alternative_matching,
                            const std::vector<std::vector<int>>& alternative_allocation) {
  json j;
  if (unbounded) {
    j["distortion"] = "+inf";
  } else {
    j["distortion"] = distortion;
  }
  j["witness_u"] = witness_u;
  if (!alternative_matching.empty()) j["alternative_matching"] = alternative_matching;
  if (!alternative_allocation.empty()) j["alternative_allocation"] = alternative_allocation;
  return j.dump(2) + "\n";
}

}  // namespace threshmatch
