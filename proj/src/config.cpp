#include "mdeo/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace mdeo {

namespace {

using nlohmann::json;

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  if (j.contains("networks")) {
    for (const auto& jn : j.at("networks")) {
      NetworkConfig net;
      maybe(jn, "name", net.name);
      maybe(jn, "path", net.path);
      maybe(jn, "beta", net.beta);
      cfg.networks.push_back(std::move(net));
    }
  }
  if (j.contains("task")) {
    const auto& jt = j.at("task");
    std::string type = "deception";
    maybe(jt, "type", type);
    if (type == "deception")
      cfg.task.type = TaskType::kDeception;
    else if (type == "influence-max")
      cfg.task.type = TaskType::kInfluenceMax;
    else
      throw std::runtime_error("unknown task type '" + type + "'");
    maybe(jt, "ic_prob", cfg.task.ic_prob);
    maybe(jt, "ic_samples", cfg.task.ic_samples);
  }
  if (j.contains("ea")) {
    const auto& je = j.at("ea");
    maybe(je, "population", cfg.ea.population);
    maybe(je, "generations", cfg.generations);
    maybe(je, "crossover_prob", cfg.ea.crossover_prob);
    maybe(je, "mutation_prob", cfg.ea.mutation_prob);
    maybe(je, "elite_fraction", cfg.ea.elite_fraction);
  }
  if (j.contains("transfer")) {
    const auto& jt = j.at("transfer");
    maybe(jt, "enabled", cfg.transfer.enabled);
    maybe(jt, "k", cfg.transfer.k);
    maybe(jt, "total", cfg.transfer.total);
    maybe(jt, "assisted_override", cfg.transfer.assisted_override);
    maybe(jt, "swap_mutation_candidates", cfg.transfer.swap_mutation_candidates);
  }
  if (j.contains("learn")) {
    const auto& jl = j.at("learn");
    if (jl.contains("gae")) {
      const auto& jg = jl.at("gae");
      maybe(jg, "hidden", cfg.gae.hidden);
      maybe(jg, "embed", cfg.gae.embed);
      maybe(jg, "epochs", cfg.gae.epochs);
      maybe(jg, "lr", cfg.gae.lr);
    }
    if (jl.contains("alignment")) {
      const auto& ja = jl.at("alignment");
      maybe(ja, "epochs", cfg.alignment.epochs);
      maybe(ja, "lr", cfg.alignment.lr);
    }
  }
  maybe(j, "seed", cfg.seed);
  maybe(j, "output_dir", cfg.output_dir);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["networks"] = json::array();
  for (const auto& net : cfg.networks)
    j["networks"].push_back({{"name", net.name}, {"path", net.path}, {"beta", net.beta}});
  j["task"] = {
      {"type", cfg.task.type == TaskType::kDeception ? "deception" : "influence-max"},
      {"ic_prob", cfg.task.ic_prob},
      {"ic_samples", cfg.task.ic_samples},
  };
  j["ea"] = {
      {"population", cfg.ea.population},        {"generations", cfg.generations},
      {"crossover_prob", cfg.ea.crossover_prob}, {"mutation_prob", cfg.ea.mutation_prob},
      {"elite_fraction", cfg.ea.elite_fraction},
  };
  j["transfer"] = {
      {"enabled", cfg.transfer.enabled},
      {"k", cfg.transfer.k},
      {"total", cfg.transfer.total},
      {"assisted_override", cfg.transfer.assisted_override},
      {"swap_mutation_candidates", cfg.transfer.swap_mutation_candidates},
  };
  j["learn"] = {
      {"gae",
       {{"hidden", cfg.gae.hidden},
        {"embed", cfg.gae.embed},
        {"epochs", cfg.gae.epochs},
        {"lr", cfg.gae.lr}}},
      {"alignment", {{"epochs", cfg.alignment.epochs}, {"lr", cfg.alignment.lr}}},
  };
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j.dump(2) + "\n";
}

void validate_config(const RunConfig& cfg) {
  if (cfg.networks.empty()) throw std::invalid_argument("config lists no networks");
  std::unordered_set<std::string> names;
  for (const auto& net : cfg.networks) {
    if (net.name.empty()) throw std::invalid_argument("network name must not be empty");
    if (net.name.find_first_of(",\n+") != std::string::npos)
      throw std::invalid_argument("network name '" + net.name + "' contains a reserved character");
    if (!names.insert(net.name).second)
      throw std::invalid_argument("duplicate network name '" + net.name + "'");
    if (net.beta < 1) throw std::invalid_argument("beta must be >= 1 for '" + net.name + "'");
    if (!std::filesystem::exists(net.path))
      throw std::invalid_argument("edge list '" + net.path + "' does not exist");
  }
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(cfg.ea.crossover_prob) || !prob(cfg.ea.mutation_prob) ||
      !prob(cfg.ea.elite_fraction) || !prob(cfg.task.ic_prob))
    throw std::invalid_argument("probabilities must lie in [0,1]");
  if (cfg.ea.population < 2) throw std::invalid_argument("population must be >= 2");
  if (cfg.generations < 1) throw std::invalid_argument("generations must be >= 1");
  if (cfg.task.ic_samples < 1) throw std::invalid_argument("ic_samples must be >= 1");
  if (cfg.transfer.k < 1) throw std::invalid_argument("transfer k must be >= 1");
  if (cfg.transfer.total < 1) throw std::invalid_argument("transfer total must be >= 1");
  if (cfg.transfer.assisted_override < 0)
    throw std::invalid_argument("assisted_override must be >= 0");
  if (cfg.gae.hidden < 1 || cfg.gae.embed < 1 || cfg.gae.epochs < 0 || cfg.gae.lr <= 0)
    throw std::invalid_argument("invalid gae hyperparameters");
  if (cfg.alignment.epochs < 0 || cfg.alignment.lr <= 0)
    throw std::invalid_argument("invalid alignment hyperparameters");
}

OrchestratorConfig to_orchestrator_config(const RunConfig& cfg) {
  OrchestratorConfig out;
  out.ea = cfg.ea;
  out.transfer = cfg.transfer;
  out.gae = cfg.gae;
  out.alignment = cfg.alignment;
  out.generations = cfg.generations;
  out.seed = cfg.seed;
  return out;
}

}  // namespace mdeo
