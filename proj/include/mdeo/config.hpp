#pragma once

#include <string>
#include <vector>

#include "mdeo/orchestrator.hpp"

namespace mdeo {

struct NetworkConfig {
  std::string name;
  std::string path;
  int beta = 10;

  bool operator==(const NetworkConfig&) const = default;
};

struct TaskConfig {
  TaskType type = TaskType::kDeception;
  double ic_prob = 0.05;
  int ic_samples = 100;

  bool operator==(const TaskConfig&) const = default;
};

struct RunConfig {
  std::vector<NetworkConfig> networks;
  TaskConfig task;
  EaConfig ea;
  int generations = 200;
  TransferConfig transfer;
  GaeConfig gae;
  AlignmentConfig alignment;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Rejects out-of-range probabilities and budgets, duplicate or unusable
// network names, and missing edge-list files.
void validate_config(const RunConfig& cfg);

OrchestratorConfig to_orchestrator_config(const RunConfig& cfg);

}  // namespace mdeo
