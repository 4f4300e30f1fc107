#include "mdeo/evo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace mdeo {

namespace {

constexpr int kRejectionTries = 64;
constexpr int kGuidedTries = 10;

// Tracks edges already present in a genome while fresh genes are drawn.
class UsedEdges {
 public:
  explicit UsedEdges(int n) : n_(n) {}

  bool contains(const Edge& e) const { return set_.count(key(e)) > 0; }
  void insert(const Edge& e) { set_.insert(key(e)); }
  void erase(const Edge& e) { set_.erase(key(e)); }

 private:
  long long key(const Edge& e) const { return static_cast<long long>(e.first) * n_ + e.second; }
  int n_;
  std::unordered_set<long long> set_;
};

// Uniform unused non-edge; rejection sampling first, exhaustive enumeration
// when the pool is too tight to hit by chance.
std::optional<Edge> fresh_addition(const Graph& g, const UsedEdges& used, Rng& rng) {
  const int n = g.node_count();
  for (int t = 0; t < kRejectionTries; ++t) {
    const NodeId u = rng.below_int(n), v = rng.below_int(n);
    if (u == v) continue;
    const Edge e = make_edge(u, v);
    if (!g.has_edge(e.first, e.second) && !used.contains(e)) return e;
  }
  EdgeList pool;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const Edge e{u, v};
      if (!g.has_edge(u, v) && !used.contains(e)) pool.push_back(e);
    }
  if (pool.empty()) return std::nullopt;
  return pool[rng.below_int(static_cast<int>(pool.size()))];
}

std::optional<Edge> fresh_deletion(const Graph& g, const UsedEdges& used, Rng& rng) {
  const auto& edges = g.edges();
  if (edges.empty()) return std::nullopt;
  for (int t = 0; t < kRejectionTries; ++t) {
    const Edge e = edges[rng.below_int(static_cast<int>(edges.size()))];
    if (!used.contains(e)) return e;
  }
  EdgeList pool;
  for (const Edge& e : edges)
    if (!used.contains(e)) pool.push_back(e);
  if (pool.empty()) return std::nullopt;
  return pool[rng.below_int(static_cast<int>(pool.size()))];
}

std::optional<NodeId> fresh_seed(const Graph& g, const std::unordered_set<NodeId>& used,
                                 Rng& rng) {
  const int n = g.node_count();
  if (static_cast<int>(used.size()) >= n) return std::nullopt;
  for (int t = 0; t < kRejectionTries; ++t) {
    const NodeId v = rng.below_int(n);
    if (!used.count(v)) return v;
  }
  std::vector<NodeId> pool;
  for (NodeId v = 0; v < n; ++v)
    if (!used.count(v)) pool.push_back(v);
  return pool[rng.below_int(static_cast<int>(pool.size()))];
}

// Fresh gene of the preferred part, spilling into the other part when the
// preferred pool is exhausted. Appends to the matching list.
bool try_push_fresh_gene(Chromosome& c, const Graph& g, UsedEdges& used, bool prefer_addition,
                         Rng& rng) {
  auto push_add = [&]() {
    if (auto e = fresh_addition(g, used, rng)) {
      used.insert(*e);
      c.additions.push_back(*e);
      return true;
    }
    return false;
  };
  auto push_del = [&]() {
    if (auto e = fresh_deletion(g, used, rng)) {
      used.insert(*e);
      c.deletions.push_back(*e);
      return true;
    }
    return false;
  };
  return prefer_addition ? push_add() || push_del() : push_del() || push_add();
}

void push_fresh_gene(Chromosome& c, const Graph& g, UsedEdges& used, bool prefer_addition,
                     Rng& rng) {
  if (!try_push_fresh_gene(c, g, used, prefer_addition, rng))
    throw std::runtime_error("graph cannot supply enough distinct genes");
}

Partition singleton_partition(int n) {
  std::vector<int> assign(n);
  std::iota(assign.begin(), assign.end(), 0);
  return Partition::from_assignment(assign);
}

void swap_segments(EdgeList& x, EdgeList& y, Rng& rng) {
  const int lim = static_cast<int>(std::min(x.size(), y.size()));
  if (lim < 1) return;
  const int len = 1 + rng.below_int(lim);
  const int sx = rng.below_int(static_cast<int>(x.size()) - len + 1);
  const int sy = rng.below_int(static_cast<int>(y.size()) - len + 1);
  for (int k = 0; k < len; ++k) std::swap(x[sx + k], y[sy + k]);
}

int sample_source(const MutationCandidates& cands, Rng& rng) {
  double total = 0;
  for (double p : cands.probs) total += p;
  if (total <= 0) return rng.below_int(static_cast<int>(cands.sources.size()));
  const double r = rng.uniform01() * total;
  double acc = 0;
  for (std::size_t j = 0; j < cands.probs.size(); ++j) {
    acc += cands.probs[j];
    if (r < acc) return static_cast<int>(j);
  }
  return static_cast<int>(cands.probs.size()) - 1;
}

}  // namespace

Population init_population(const Graph& g, const TaskSpec& spec, int size, Rng& rng) {
  const int n = g.node_count();
  Population pop;
  pop.individuals.reserve(size);

  if (spec.type == TaskType::kInfluenceMax) {
    if (spec.budget > n) throw std::invalid_argument("seed budget exceeds node count");
    for (int i = 0; i < size; ++i) {
      Chromosome c;
      c.task = TaskType::kInfluenceMax;
      std::unordered_set<NodeId> used;
      for (int j = 0; j < spec.budget; ++j) {
        const NodeId v = *fresh_seed(g, used, rng);
        used.insert(v);
        c.seeds.push_back(v);
      }
      pop.individuals.push_back(std::move(c));
    }
    return pop;
  }

  const long long m = g.edge_count();
  const long long possible = static_cast<long long>(n) * (n - 1) / 2 - m;
  if (spec.budget > m + possible)
    throw std::invalid_argument("edit budget exceeds available operations");
  const int lo = static_cast<int>(std::max<long long>(0, spec.budget - m));
  const int hi = static_cast<int>(std::min<long long>(spec.budget, possible));

  for (int i = 0; i < size; ++i) {
    Chromosome c;
    const int rho = std::clamp(rng.below_int(spec.budget + 1), lo, hi);
    UsedEdges used(n);
    for (int j = 0; j < rho; ++j) {
      const Edge e = *fresh_addition(g, used, rng);
      used.insert(e);
      c.additions.push_back(e);
    }
    for (int j = 0; j < spec.budget - rho; ++j) {
      const Edge e = *fresh_deletion(g, used, rng);
      used.insert(e);
      c.deletions.push_back(e);
    }
    pop.individuals.push_back(std::move(c));
  }
  return pop;
}

void evaluate(Population& pop, const FitnessFn& fit) {
  pop.fitness.resize(pop.individuals.size());
  for (std::size_t i = 0; i < pop.individuals.size(); ++i) pop.fitness[i] = fit(pop.individuals[i]);
}

double deception_score(const Partition& base, const Partition& modified) {
  const int n = static_cast<int>(base.assignment.size());
  const int k1 = base.community_count(), k2 = modified.community_count();
  std::vector<std::vector<int>> m(k1, std::vector<int>(k2, 0));
  for (int v = 0; v < n; ++v) ++m[base.assignment[v]][modified.assignment[v]];

  double inner = 0, max_mp = 0;
  for (int i = 0; i < k1; ++i) {
    const double si = static_cast<double>(base.communities[i].size());
    for (int j = 0; j < k2; ++j) {
      if (m[i][j] == 0) continue;
      const double frac = m[i][j] / si;
      inner += (si / n) * frac * std::log2(frac);
      const double cj = static_cast<double>(modified.communities[j].size());
      max_mp = std::max(max_mp, m[i][j] / cj * std::log2(cj));
    }
  }
  return -inner * std::exp(-max_mp);
}

DeceptionFitness::DeceptionFitness(const Graph& g, Partition base,
                                   const CommunityDetector& detector)
    : g_(g), base_(std::move(base)), detector_(detector) {}

double DeceptionFitness::operator()(const Chromosome& c) {
  const std::string key = canonical_key(c);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const Graph h = apply_edits(g_, to_edit_set(c));
  const Partition modified =
      h.edge_count() > 0 ? detector_.detect(h) : singleton_partition(h.node_count());
  const double f = deception_score(base_, modified);
  memo_.emplace(key, f);
  return f;
}

double ic_spread(const Graph& g, const std::vector<NodeId>& seeds, double p, int samples,
                 Rng& rng) {
  const int n = g.node_count();
  std::vector<char> active(n);
  std::vector<NodeId> frontier, next;
  long long total = 0;
  for (int s = 0; s < samples; ++s) {
    std::fill(active.begin(), active.end(), 0);
    frontier.assign(seeds.begin(), seeds.end());
    for (NodeId v : frontier) active[v] = 1;
    int size = static_cast<int>(seeds.size());
    while (!frontier.empty()) {
      next.clear();
      for (NodeId u : frontier)
        for (NodeId w : g.neighbors(u))
          if (!active[w] && rng.uniform01() < p) {
            active[w] = 1;
            next.push_back(w);
            ++size;
          }
      frontier.swap(next);
    }
    total += size;
  }
  return static_cast<double>(total) / samples;
}

SpreadFitness::SpreadFitness(const Graph& g, double p, int samples, std::uint64_t seed)
    : g_(g), p_(p), samples_(samples), seed_(seed) {}

double SpreadFitness::operator()(const Chromosome& c) {
  const std::string key = canonical_key(c);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rng rng(derive_seed(seed_, "genome", fnv1a64(key)));
  const double f = ic_spread(g_, c.seeds, p_, samples_, rng);
  memo_.emplace(key, f);
  return f;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            double prob, Rng& rng) {
  if (a.task != b.task) throw std::invalid_argument("crossover across tasks");
  if (!(rng.uniform01() < prob)) return {a, b};
  Chromosome ca = a, cb = b;
  if (a.task == TaskType::kDeception) {
    swap_segments(ca.additions, cb.additions, rng);
    swap_segments(ca.deletions, cb.deletions, rng);
  } else {
    const std::size_t lim = std::min(ca.seeds.size(), cb.seeds.size());
    for (std::size_t i = 0; i < lim; ++i)
      if (rng.uniform01() < 0.5) std::swap(ca.seeds[i], cb.seeds[i]);
  }
  return {ca, cb};
}

Chromosome mutate(const Chromosome& c, const Graph& g, const MutationCandidates* candidates,
                  double prob, Rng& rng) {
  Chromosome out = c;
  if (!(rng.uniform01() < prob)) return out;
  const int len = out.length();
  if (len == 0) return out;
  const int idx = rng.below_int(len);

  if (out.task == TaskType::kInfluenceMax) {
    std::unordered_set<NodeId> others;
    for (int i = 0; i < len; ++i)
      if (i != idx) others.insert(out.seeds[i]);
    if (candidates && !candidates->empty()) {
      for (int t = 0; t < kGuidedTries; ++t) {
        const int j = sample_source(*candidates, rng);
        const auto& pool = candidates->seed_pool[j];
        if (pool.empty()) continue;
        const NodeId v = pool[rng.below_int(static_cast<int>(pool.size()))];
        if (v >= 0 && v < g.node_count() && !others.count(v)) {
          out.seeds[idx] = v;
          return out;
        }
      }
    }
    if (auto v = fresh_seed(g, others, rng)) out.seeds[idx] = *v;
    return out;
  }

  const bool is_add = idx < out.rho();
  Edge& slot = is_add ? out.additions[idx] : out.deletions[idx - out.rho()];
  UsedEdges others(g.node_count());
  for (int i = 0; i < len; ++i) {
    if (i == idx) continue;
    others.insert(i < out.rho() ? out.additions[i] : out.deletions[i - out.rho()]);
  }
  auto gene_ok = [&](const Edge& e) {
    if (e.first < 0 || e.second >= g.node_count() || e.first >= e.second) return false;
    if (others.contains(e)) return false;
    return is_add ? !g.has_edge(e.first, e.second) : g.has_edge(e.first, e.second);
  };
  if (candidates && !candidates->empty()) {
    for (int t = 0; t < kGuidedTries; ++t) {
      const int j = sample_source(*candidates, rng);
      const auto& pool = is_add ? candidates->addition_pool[j] : candidates->deletion_pool[j];
      if (pool.empty()) continue;
      const Edge e = pool[rng.below_int(static_cast<int>(pool.size()))];
      if (gene_ok(e)) {
        slot = e;
        return out;
      }
    }
  }
  const auto fresh = is_add ? fresh_addition(g, others, rng) : fresh_deletion(g, others, rng);
  if (fresh) slot = *fresh;
  return out;
}

Chromosome repair(const Chromosome& c, const Graph& g, int budget, Rng& rng) {
  const int n = g.node_count();

  if (c.task == TaskType::kInfluenceMax) {
    if (budget > n) throw std::runtime_error("graph cannot supply enough distinct genes");
    Chromosome out;
    out.task = c.task;
    out.origin = c.origin;
    std::unordered_set<NodeId> used;
    for (NodeId s : c.seeds) {
      if (s >= 0 && s < n && !used.count(s)) {
        used.insert(s);
        out.seeds.push_back(s);
      } else if (auto v = fresh_seed(g, used, rng)) {
        // replace in place; an exhausted node pool just drops the gene
        used.insert(*v);
        out.seeds.push_back(*v);
      }
    }
    while (static_cast<int>(out.seeds.size()) > budget) {
      const int i = rng.below_int(static_cast<int>(out.seeds.size()));
      used.erase(out.seeds[i]);
      out.seeds.erase(out.seeds.begin() + i);
    }
    while (static_cast<int>(out.seeds.size()) < budget) {
      const NodeId v = *fresh_seed(g, used, rng);
      used.insert(v);
      out.seeds.push_back(v);
    }
    return out;
  }

  Chromosome out;
  out.task = c.task;
  out.origin = c.origin;
  UsedEdges used(n);
  // in-part replacement of degenerate, duplicate, and wrong-part genes;
  // an exhausted pool drops the gene (the fill stage below still enforces
  // the budget and is the only place that can fail)
  for (const Edge& raw : c.additions) {
    const bool degenerate = raw.first == raw.second || raw.first < 0 ||
                            std::max(raw.first, raw.second) >= n;
    const Edge e = degenerate ? raw : make_edge(raw.first, raw.second);
    if (!degenerate && !g.has_edge(e.first, e.second) && !used.contains(e)) {
      used.insert(e);
      out.additions.push_back(e);
    } else {
      try_push_fresh_gene(out, g, used, true, rng);
    }
  }
  for (const Edge& raw : c.deletions) {
    const bool degenerate = raw.first == raw.second || raw.first < 0 ||
                            std::max(raw.first, raw.second) >= n;
    const Edge e = degenerate ? raw : make_edge(raw.first, raw.second);
    if (!degenerate && g.has_edge(e.first, e.second) && !used.contains(e)) {
      used.insert(e);
      out.deletions.push_back(e);
    } else {
      try_push_fresh_gene(out, g, used, false, rng);
    }
  }
  // adjust to the target budget
  while (out.length() > budget) {
    const int i = rng.below_int(out.length());
    if (i < out.rho()) {
      used.erase(out.additions[i]);
      out.additions.erase(out.additions.begin() + i);
    } else {
      used.erase(out.deletions[i - out.rho()]);
      out.deletions.erase(out.deletions.begin() + (i - out.rho()));
    }
  }
  while (out.length() < budget) push_fresh_gene(out, g, used, rng.bernoulli(0.5), rng);
  return out;
}

int elite_count(const EaConfig& cfg) {
  return static_cast<int>(std::ceil(cfg.elite_fraction * cfg.population));
}

Population evolve_generation(const Population& pop, const Graph& g, const FitnessFn& fit,
                             const EaConfig& cfg, const TaskSpec& spec, Rng& rng,
                             const MutationCandidates* candidates) {
  if (pop.size() == 0 || pop.fitness.size() != pop.individuals.size())
    throw std::invalid_argument("population must be evaluated");
  const int base = cfg.population;

  std::vector<int> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pop.fitness[a] > pop.fitness[b]; });

  Population next;
  const int elites = std::min(elite_count(cfg), std::min(pop.size(), base));
  for (int i = 0; i < elites; ++i) {
    next.individuals.push_back(pop.individuals[order[i]]);
    next.fitness.push_back(pop.fitness[order[i]]);
  }

  while (next.size() < base) {
    const int pa = rng.below_int(pop.size());
    const int pb = rng.below_int(pop.size());
    auto [c1, c2] = crossover(pop.individuals[pa], pop.individuals[pb], cfg.crossover_prob, rng);
    for (Chromosome* child : {&c1, &c2}) {
      if (next.size() >= base) break;
      Chromosome m = mutate(*child, g, candidates, cfg.mutation_prob, rng);
      m = repair(m, g, spec.budget, rng);
      next.fitness.push_back(fit(m));
      next.individuals.push_back(std::move(m));
    }
  }
  return next;
}

EditSet ram_baseline(const Graph& g, int budget, Rng& rng) {
  const int n = g.node_count();
  const long long m = g.edge_count();
  const long long possible = static_cast<long long>(n) * (n - 1) / 2 - m;
  if (budget > m + possible) throw std::invalid_argument("edit budget exceeds available operations");
  Chromosome c;
  UsedEdges used(n);
  for (int i = 0; i < budget; ++i) push_fresh_gene(c, g, used, rng.bernoulli(0.5), rng);
  return to_edit_set(c);
}

EditSet dice_baseline(const Graph& g, const Partition& p, int budget, Rng& rng) {
  const int n = g.node_count();
  const int ndel = (budget + 1) / 2, nadd = budget / 2;
  Chromosome c;
  UsedEdges used(n);

  EdgeList intra;
  for (const Edge& e : g.edges())
    if (p.assignment[e.first] == p.assignment[e.second]) intra.push_back(e);
  for (int i = 0; i < ndel; ++i) {
    if (!intra.empty()) {
      const int j = rng.below_int(static_cast<int>(intra.size()));
      used.insert(intra[j]);
      c.deletions.push_back(intra[j]);
      intra[j] = intra.back();
      intra.pop_back();
    } else {
      push_fresh_gene(c, g, used, rng.bernoulli(0.5), rng);
    }
  }

  for (int i = 0; i < nadd; ++i) {
    std::optional<Edge> pick;
    for (int t = 0; t < kRejectionTries && !pick; ++t) {
      const NodeId u = rng.below_int(n), v = rng.below_int(n);
      if (u == v || p.assignment[u] == p.assignment[v]) continue;
      const Edge e = make_edge(u, v);
      if (!g.has_edge(e.first, e.second) && !used.contains(e)) pick = e;
    }
    if (!pick) {
      EdgeList pool;
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
          if (p.assignment[u] != p.assignment[v] && !g.has_edge(u, v) &&
              !used.contains({u, v}))
            pool.push_back({u, v});
      if (!pool.empty()) pick = pool[rng.below_int(static_cast<int>(pool.size()))];
    }
    if (pick) {
      used.insert(*pick);
      c.additions.push_back(*pick);
    } else {
      push_fresh_gene(c, g, used, rng.bernoulli(0.5), rng);
    }
  }
  return to_edit_set(c);
}

}  // namespace mdeo
