#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdeo/chromosome.hpp"
#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/rng.hpp"

namespace mdeo {

struct EaConfig {
  int population = 100;
  double crossover_prob = 0.5;
  double mutation_prob = 0.1;
  double elite_fraction = 0.1;

  bool operator==(const EaConfig&) const = default;
};

struct Population {
  std::vector<Chromosome> individuals;
  std::vector<double> fitness;

  int size() const { return static_cast<int>(individuals.size()); }
};

using FitnessFn = std::function<double(const Chromosome&)>;

// Uniform random genomes: deception draws rho ~ U{0..budget} (clamped to
// pool feasibility), spread draws distinct seed nodes. Unevaluated.
Population init_population(const Graph& g, const TaskSpec& spec, int size, Rng& rng);

void evaluate(Population& pop, const FitnessFn& fit);

// Entropy-style confusion score between the baseline partition and the
// partition detected after applying the genome's edits, damped by the
// exponential of the largest column-normalized cell. Memoized per genome.
class DeceptionFitness {
 public:
  DeceptionFitness(const Graph& g, Partition base, const CommunityDetector& detector);

  double operator()(const Chromosome& c);

 private:
  const Graph& g_;
  Partition base_;
  const CommunityDetector& detector_;
  std::unordered_map<std::string, double> memo_;
};

double deception_score(const Partition& base, const Partition& modified);

// Mean activated-set size over independent-cascade simulations drawing
// randomness from the supplied generator.
double ic_spread(const Graph& g, const std::vector<NodeId>& seeds, double p, int samples,
                 Rng& rng);

// Genome-keyed substreams make the spread a pure function of the genome
// regardless of evaluation order.
class SpreadFitness {
 public:
  SpreadFitness(const Graph& g, double p, int samples, std::uint64_t seed);

  double operator()(const Chromosome& c);

 private:
  const Graph& g_;
  double p_;
  int samples_;
  std::uint64_t seed_;
  std::unordered_map<std::string, double> memo_;
};

// Segment exchange inside the addition part and the deletion part
// separately (uniform per-position swap for seed sets), gated by prob.
// Offspring are raw: repair restores invariants downstream.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            double prob, Rng& rng);

// Per-source gene pools feeding guided mutation, with the selection
// probabilities over donating networks.
struct MutationCandidates {
  std::vector<int> sources;
  std::vector<double> probs;                // parallel to sources
  std::vector<EdgeList> addition_pool;      // deception, per source
  std::vector<EdgeList> deletion_pool;
  std::vector<std::vector<NodeId>> seed_pool;  // spread, per source

  bool empty() const { return sources.empty(); }
};

// With probability prob, replaces one uniformly chosen gene: guided draws
// pick a source network by its probability and a gene from that source's
// matching-part pool (10 tries), otherwise a uniform valid gene.
Chromosome mutate(const Chromosome& c, const Graph& g, const MutationCandidates* candidates,
                  double prob, Rng& rng);

// Replaces degenerate / duplicate / wrong-part genes in place, then adjusts
// the genome length to the budget (random removal, coin-flip-part fill).
// Throws when the graph cannot supply enough distinct genes.
Chromosome repair(const Chromosome& c, const Graph& g, int budget, Rng& rng);

// One elitist generation: top ceil(elite_fraction * population) individuals
// survive unchanged, the rest come from uniformly drawn parent pairs pushed
// through crossover, mutation, repair, and evaluation. Output has exactly
// cfg.population members even when the input was injection-inflated.
Population evolve_generation(const Population& pop, const Graph& g, const FitnessFn& fit,
                             const EaConfig& cfg, const TaskSpec& spec, Rng& rng,
                             const MutationCandidates* candidates = nullptr);

int elite_count(const EaConfig& cfg);

// Random rewiring: budget coin-flip add/delete operations.
EditSet ram_baseline(const Graph& g, int budget, Rng& rng);

// Deletes ceil(budget/2) intra-community edges and adds floor(budget/2)
// inter-community non-edges, falling back to uniform operations when a
// pool runs dry.
EditSet dice_baseline(const Graph& g, const Partition& p, int budget, Rng& rng);

}  // namespace mdeo
