#include "mdeo/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace mdeo {

namespace {

// Runs fn(0..count-1) on up to `threads` workers; slots are written
// independently so no synchronization beyond the joins is needed.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

bool transfer_condition(const std::vector<double>& history, int k, int gen) {
  if (gen < 2 * k || gen % k != 0) return false;
  if (static_cast<int>(history.size()) <= gen) throw std::invalid_argument("history too short");
  const double d1 = std::abs(history[gen] - history[gen - k]);
  const double d2 = std::abs(history[gen - k] - history[gen - 2 * k]);
  return d1 < d2;
}

std::vector<int> allocate_transfers(const std::vector<double>& sims, int total) {
  const int n = static_cast<int>(sims.size());
  if (n == 0) return {};
  for (double s : sims)
    if (s < 0) throw std::invalid_argument("negative similarity");
  double sum = std::accumulate(sims.begin(), sims.end(), 0.0);
  std::vector<double> quota(n);
  for (int i = 0; i < n; ++i) quota[i] = sum > 0 ? total * sims[i] / sum : static_cast<double>(total) / n;

  std::vector<int> out(n);
  int assigned = 0;
  for (int i = 0; i < n; ++i) {
    out[i] = static_cast<int>(std::floor(quota[i]));
    assigned += out[i];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = quota[a] - std::floor(quota[a]);
    const double rb = quota[b] - std::floor(quota[b]);
    if (ra != rb) return ra > rb;
    return a < b;
  });
  for (int i = 0; assigned < total; ++i, ++assigned) ++out[order[i % n]];
  return out;
}

std::vector<Chromosome> export_elites(const Population& pop, int count) {
  if (count > pop.size()) {
    std::cerr << "export_elites: clamping count " << count << " to population size "
              << pop.size() << "\n";
    count = pop.size();
  }
  std::vector<int> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pop.fitness[a] > pop.fitness[b]; });
  std::vector<Chromosome> out;
  std::unordered_set<std::string> seen;
  for (int idx : order) {
    if (static_cast<int>(out.size()) >= count) break;
    if (seen.insert(canonical_key(pop.individuals[idx])).second)
      out.push_back(pop.individuals[idx]);
  }
  return out;
}

double measure_contribution(const std::vector<Chromosome>& elite_now,
                            const std::vector<Chromosome>& elite_before,
                            const std::vector<Chromosome>& transferred) {
  if (elite_now.empty()) return 0.0;
  std::unordered_set<std::string> before, moved;
  for (const auto& c : elite_before) before.insert(canonical_key(c));
  for (const auto& c : transferred) moved.insert(canonical_key(c));
  int hits = 0;
  for (const auto& c : elite_now) {
    const std::string key = canonical_key(c);
    if (!before.count(key) && moved.count(key)) ++hits;
  }
  return static_cast<double>(hits) / elite_now.size();
}

void update_similarity(Matrix& s, int i, const std::vector<int>& assisted,
                       const std::vector<double>& contributions) {
  if (assisted.size() != contributions.size())
    throw std::invalid_argument("contribution per assisted network required");
  double sum = 0;
  for (std::size_t a = 0; a < assisted.size(); ++a) {
    s(i, assisted[a]) += contributions[a];
    sum += s(i, assisted[a]);
  }
  if (sum <= 0) return;
  for (int j : assisted) s(i, j) /= sum;
}

Chromosome map_chromosome(const Chromosome& c, const std::vector<NodeId>& mapping) {
  Chromosome out;
  out.task = c.task;
  out.origin = c.origin;
  if (c.task == TaskType::kInfluenceMax) {
    out.seeds.reserve(c.seeds.size());
    for (NodeId s : c.seeds) out.seeds.push_back(mapping.at(s));
    return out;
  }
  out.additions.reserve(c.additions.size());
  out.deletions.reserve(c.deletions.size());
  for (const auto& [u, v] : c.additions) out.additions.push_back(make_edge(mapping.at(u), mapping.at(v)));
  for (const auto& [u, v] : c.deletions) out.deletions.push_back(make_edge(mapping.at(u), mapping.at(v)));
  return out;
}

namespace {

// Per-target transfer bookkeeping between events.
struct TargetLedger {
  bool has_prev = false;
  std::vector<Chromosome> elite_snapshot;       // elites at the last transfer
  std::vector<std::vector<Chromosome>> t_last;  // per assisted source
  MutationCandidates candidates;
  bool has_candidates = false;
};

void validate(const std::vector<NetworkSpec>& specs, const OrchestratorConfig& cfg) {
  if (specs.empty()) throw std::invalid_argument("no networks configured");
  if (cfg.transfer.enabled && specs.size() < 2)
    throw std::invalid_argument("transfer requires at least 2 networks");
  if (cfg.generations < 1) throw std::invalid_argument("generations must be >= 1");
  if (cfg.ea.population < 2) throw std::invalid_argument("population must be >= 2");
  if (cfg.ea.crossover_prob < 0 || cfg.ea.crossover_prob > 1 || cfg.ea.mutation_prob < 0 ||
      cfg.ea.mutation_prob > 1)
    throw std::invalid_argument("probabilities must lie in [0,1]");
  if (cfg.ea.elite_fraction < 0 || cfg.ea.elite_fraction > 1)
    throw std::invalid_argument("elite fraction must lie in [0,1]");
  if (cfg.transfer.k < 1) throw std::invalid_argument("transfer interval k must be >= 1");
  if (cfg.transfer.total < 1) throw std::invalid_argument("transfer total must be >= 1");
  for (const auto& spec : specs) {
    if (spec.task.type != specs.front().task.type)
      throw std::invalid_argument("all networks must share one task type");
    if (spec.task.budget < 1) throw std::invalid_argument("budget must be >= 1");
  }
}

}  // namespace

MdeoResult run_mdeo(const std::vector<NetworkSpec>& specs, const OrchestratorConfig& cfg) {
  validate(specs, cfg);
  const int n = static_cast<int>(specs.size());
  const GreedyModularityDetector detector;

  std::vector<Partition> parts(n);
  parallel_for_index(n, cfg.threads,
                     [&](int i) { parts[i] = detector.detect(specs[i].graph); });

  MdeoResult res;
  res.networks.resize(n);

  // node mappings: mapping[target][source], filled for assisted pairs only
  std::vector<std::vector<std::vector<NodeId>>> mapping(n,
                                                        std::vector<std::vector<NodeId>>(n));
  SimilarityState sim;
  if (cfg.transfer.enabled) {
    std::vector<NetworkProfile> profiles;
    profiles.reserve(n);
    for (int i = 0; i < n; ++i) profiles.push_back(NetworkProfile::build(specs[i].graph, parts[i]));
    res.similarity_initial = pairwise_similarity_matrix(profiles);
    sim = init_similarity_and_assisted(res.similarity_initial, cfg.transfer.assisted_override);
    res.assisted = sim.assisted;

    std::vector<Matrix> embeddings(n);
    parallel_for_index(n, cfg.threads, [&](int i) {
      Rng rng(derive_seed(cfg.seed, "gae", i));
      embeddings[i] = train_gae(specs[i].graph, parts[i], cfg.gae, rng).embedding;
    });

    parallel_for_index(n, cfg.threads, [&](int i) {
      for (int j : sim.assisted[i]) {
        const Matrix cs = community_similarity_matrix(profiles[j], profiles[i]);
        const AlignedCommunities aligned = align_communities(cs);
        const AnchorSet anchors =
            select_anchors(specs[j].graph, parts[j], specs[i].graph, parts[i], aligned.pairs);
        const AlignmentResult trained =
            train_alignment(embeddings[j], embeddings[i], anchors, cfg.alignment);
        mapping[i][j] = node_mapping(embeddings[j], embeddings[i], trained.model);
      }
    });
  }

  // evolutionary state
  std::vector<Rng> rng_evo, rng_transfer;
  std::vector<FitnessFn> fit(n);
  std::vector<std::shared_ptr<DeceptionFitness>> dfit(n);
  std::vector<std::shared_ptr<SpreadFitness>> sfit(n);
  for (int i = 0; i < n; ++i) {
    rng_evo.emplace_back(derive_seed(cfg.seed, "evo", i));
    rng_transfer.emplace_back(derive_seed(cfg.seed, "transfer", i));
    if (specs[i].task.type == TaskType::kDeception) {
      dfit[i] = std::make_shared<DeceptionFitness>(specs[i].graph, parts[i], detector);
      fit[i] = [f = dfit[i]](const Chromosome& c) { return (*f)(c); };
    } else {
      sfit[i] = std::make_shared<SpreadFitness>(specs[i].graph, specs[i].task.ic_prob,
                                                specs[i].task.ic_samples,
                                                derive_seed(cfg.seed, "ic", i));
      fit[i] = [f = sfit[i]](const Chromosome& c) { return (*f)(c); };
    }
  }

  std::vector<Population> pops(n);
  std::vector<std::vector<double>> history(n);
  parallel_for_index(n, cfg.threads, [&](int i) {
    pops[i] = init_population(specs[i].graph, specs[i].task, cfg.ea.population, rng_evo[i]);
    evaluate(pops[i], fit[i]);
  });
  for (int i = 0; i < n; ++i) {
    const double best = *std::max_element(pops[i].fitness.begin(), pops[i].fitness.end());
    const double mean =
        std::accumulate(pops[i].fitness.begin(), pops[i].fitness.end(), 0.0) / pops[i].size();
    history[i].push_back(best);
    res.networks[i].stats.push_back({0, best, mean, 0, ""});
  }

  std::vector<TargetLedger> ledger(n);
  const int elites = elite_count(cfg.ea);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    parallel_for_index(n, cfg.threads, [&](int i) {
      const MutationCandidates* cands =
          ledger[i].has_candidates ? &ledger[i].candidates : nullptr;
      pops[i] = evolve_generation(pops[i], specs[i].graph, fit[i], cfg.ea, specs[i].task,
                                  rng_evo[i], cands);
    });
    for (int i = 0; i < n; ++i) {
      const double best = *std::max_element(pops[i].fitness.begin(), pops[i].fitness.end());
      const double mean =
          std::accumulate(pops[i].fitness.begin(), pops[i].fitness.end(), 0.0) / pops[i].size();
      history[i].push_back(best);
      res.networks[i].stats.push_back({gen, best, mean, 0, ""});
    }
    if (!cfg.transfer.enabled) continue;

    std::vector<int> targets;
    for (int i = 0; i < n; ++i)
      if (transfer_condition(history[i], cfg.transfer.k, gen)) targets.push_back(i);
    if (targets.empty()) continue;

    // all exports read this pre-injection snapshot, so the order the
    // targets are processed in cannot matter
    const std::vector<Population> snapshot = pops;
    for (int target : targets) {
      const auto& assisted = sim.assisted[target];
      const std::vector<Chromosome> elite_now = export_elites(snapshot[target], elites);

      TransferEvent event;
      event.generation = gen;
      event.target = target;
      event.sources = assisted;
      if (ledger[target].has_prev) {
        event.contributions.resize(assisted.size());
        for (std::size_t a = 0; a < assisted.size(); ++a)
          event.contributions[a] = measure_contribution(elite_now, ledger[target].elite_snapshot,
                                                        ledger[target].t_last[a]);
        update_similarity(sim.values, target, assisted, event.contributions);
      }

      std::vector<double> row;
      row.reserve(assisted.size());
      for (int j : assisted) row.push_back(sim.values(target, j));
      event.counts = allocate_transfers(row, cfg.transfer.total);

      TargetLedger next;
      next.has_prev = true;
      next.elite_snapshot = elite_now;
      next.t_last.resize(assisted.size());
      next.candidates.sources = assisted;
      next.candidates.probs = row;
      next.candidates.addition_pool.resize(assisted.size());
      next.candidates.deletion_pool.resize(assisted.size());
      next.candidates.seed_pool.resize(assisted.size());

      int injected = 0;
      std::string source_names;
      for (std::size_t a = 0; a < assisted.size(); ++a) {
        const int j = assisted[a];
        if (event.counts[a] == 0) continue;
        const auto exported = export_elites(snapshot[j], event.counts[a]);
        for (const Chromosome& e : exported) {
          Chromosome moved = map_chromosome(e, mapping[target][j]);
          moved = repair(moved, specs[target].graph, specs[target].task.budget,
                         rng_transfer[target]);
          moved.origin = j;
          next.t_last[a].push_back(moved);
          // candidate pools follow the equations literally: transferred
          // deletions feed the addition pool and vice versa, unless the
          // config swaps them back
          const bool swap = cfg.transfer.swap_mutation_candidates;
          auto& add_pool = next.candidates.addition_pool[a];
          auto& del_pool = next.candidates.deletion_pool[a];
          const auto& to_add = swap ? moved.additions : moved.deletions;
          const auto& to_del = swap ? moved.deletions : moved.additions;
          add_pool.insert(add_pool.end(), to_add.begin(), to_add.end());
          del_pool.insert(del_pool.end(), to_del.begin(), to_del.end());
          auto& seed_pool = next.candidates.seed_pool[a];
          seed_pool.insert(seed_pool.end(), moved.seeds.begin(), moved.seeds.end());

          pops[target].fitness.push_back(fit[target](moved));
          pops[target].individuals.push_back(std::move(moved));
          ++injected;
        }
        if (!source_names.empty()) source_names += '+';
        source_names += specs[j].name;
      }
      next.has_candidates = true;
      ledger[target] = std::move(next);

      res.networks[target].stats.back().transfer_in = injected;
      res.networks[target].stats.back().sources = source_names;
      res.events.push_back(std::move(event));
    }
  }

  for (int i = 0; i < n; ++i) {
    auto& out = res.networks[i];
    out.name = specs[i].name;
    out.history = std::move(history[i]);
    const auto it = std::max_element(pops[i].fitness.begin(), pops[i].fitness.end());
    out.best_fitness = *it;
    out.best = pops[i].individuals[it - pops[i].fitness.begin()];
  }
  res.similarity = cfg.transfer.enabled ? sim.values : Matrix();
  return res;
}

}  // namespace mdeo
