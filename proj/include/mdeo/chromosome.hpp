#pragma once

#include <string>
#include <vector>

#include "mdeo/graph.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

enum class TaskType { kDeception, kInfluenceMax };

struct TaskSpec {
  TaskType type = TaskType::kDeception;
  int budget = 10;          // edge operations, or seed-set size for spread
  double ic_prob = 0.05;    // per-edge activation probability
  int ic_samples = 100;     // cascades per evaluation
};

// One candidate solution. Deception genomes carry budget edge operations
// split into additions and deletions; spread genomes carry a seed set.
struct Chromosome {
  TaskType task = TaskType::kDeception;
  EdgeList additions, deletions;
  std::vector<NodeId> seeds;
  int origin = -1;  // donating network for transferred genomes, else -1

  int length() const {
    return task == TaskType::kDeception
               ? static_cast<int>(additions.size() + deletions.size())
               : static_cast<int>(seeds.size());
  }
  int rho() const { return static_cast<int>(additions.size()); }
};

// Order-insensitive genome identity, usable as a map key.
std::string canonical_key(const Chromosome& c);

bool genome_equal(const Chromosome& a, const Chromosome& b);

// Structural validity against a graph: additions are distinct non-edges,
// deletions distinct edges, seeds distinct nodes; no gene repeats.
bool is_valid(const Chromosome& c, const Graph& g);

EditSet to_edit_set(const Chromosome& c);

}  // namespace mdeo
