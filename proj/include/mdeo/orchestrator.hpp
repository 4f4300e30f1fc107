#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdeo/alignment.hpp"
#include "mdeo/chromosome.hpp"
#include "mdeo/community.hpp"
#include "mdeo/embedding.hpp"
#include "mdeo/evo.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/similarity.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

struct NetworkSpec {
  std::string name;
  Graph graph;
  TaskSpec task;
};

struct TransferConfig {
  bool enabled = true;
  int k = 5;        // generations between transfer checks
  int total = 30;   // genomes moved per transfer event
  int assisted_override = 0;  // 0 = round(sqrt(|networks|))
  bool swap_mutation_candidates = false;

  bool operator==(const TransferConfig&) const = default;
};

struct OrchestratorConfig {
  EaConfig ea;
  TransferConfig transfer;
  GaeConfig gae;
  AlignmentConfig alignment;
  int generations = 200;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct GenerationStat {
  int generation = 0;  // 0 is the initial population
  double best = 0, mean = 0;
  int transfer_in = 0;   // genomes injected right after this generation
  std::string sources;   // donating networks, '+'-joined
};

struct TransferEvent {
  int generation = 0;
  int target = 0;
  std::vector<int> sources;            // assisted networks, ascending
  std::vector<int> counts;             // parallel allocation
  std::vector<double> contributions;   // parallel; empty on a first transfer
};

struct NetworkResult {
  std::string name;
  Chromosome best;
  double best_fitness = 0;
  std::vector<double> history;  // best fitness per generation, index 0 = init
  std::vector<GenerationStat> stats;
};

struct MdeoResult {
  std::vector<NetworkResult> networks;
  std::vector<TransferEvent> events;
  std::vector<std::vector<int>> assisted;
  Matrix similarity_initial;  // raw symmetric pairwise values
  Matrix similarity;          // live matrix after the final update
};

// True when gen is a multiple of k past the warmup and the last k
// generations improved less than the k before them.
bool transfer_condition(const std::vector<double>& history, int k, int gen);

// Largest-remainder split of `total` proportional to the similarities;
// ties by index, all-zero input splits uniformly.
std::vector<int> allocate_transfers(const std::vector<double>& sims, int total);

// The count highest-fitness distinct genomes, ties by insertion order.
std::vector<Chromosome> export_elites(const Population& pop, int count);

// I = |(elite_now \ elite_before) ∩ transferred| / |elite_now|.
double measure_contribution(const std::vector<Chromosome>& elite_now,
                            const std::vector<Chromosome>& elite_before,
                            const std::vector<Chromosome>& transferred);

// Adds each contribution onto row i over the assisted set, then
// re-normalizes the row to sum 1 across that set.
void update_similarity(Matrix& s, int i, const std::vector<int>& assisted,
                       const std::vector<double>& contributions);

// Rewrites every gene through the node mapping; degenerate images survive
// for downstream repair. The rho split is preserved.
Chromosome map_chromosome(const Chromosome& c, const std::vector<NodeId>& mapping);

// Full pipeline: detection, similarity, embedding, alignment, then the
// synchronized evolve/transfer loop. With transfer disabled this is plain
// per-network evolution (SDEO) and skips all learning.
MdeoResult run_mdeo(const std::vector<NetworkSpec>& specs, const OrchestratorConfig& cfg);

}  // namespace mdeo
