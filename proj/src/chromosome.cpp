#include "mdeo/chromosome.hpp"

#include <algorithm>
#include <unordered_set>

namespace mdeo {

namespace {

void append_sorted(std::string& out, EdgeList edges) {
  std::sort(edges.begin(), edges.end());
  for (const auto& [u, v] : edges) {
    out += std::to_string(u);
    out += ',';
    out += std::to_string(v);
    out += ';';
  }
}

}  // namespace

std::string canonical_key(const Chromosome& c) {
  std::string key;
  if (c.task == TaskType::kDeception) {
    key += "A:";
    append_sorted(key, c.additions);
    key += "|D:";
    append_sorted(key, c.deletions);
  } else {
    key += "S:";
    auto seeds = c.seeds;
    std::sort(seeds.begin(), seeds.end());
    for (NodeId s : seeds) {
      key += std::to_string(s);
      key += ';';
    }
  }
  return key;
}

bool genome_equal(const Chromosome& a, const Chromosome& b) {
  return a.task == b.task && canonical_key(a) == canonical_key(b);
}

bool is_valid(const Chromosome& c, const Graph& g) {
  const int n = g.node_count();
  if (c.task == TaskType::kInfluenceMax) {
    std::unordered_set<NodeId> seen;
    for (NodeId s : c.seeds) {
      if (s < 0 || s >= n || !seen.insert(s).second) return false;
    }
    return true;
  }
  std::unordered_set<long long> seen;
  auto key = [n](const Edge& e) {
    return static_cast<long long>(e.first) * n + e.second;
  };
  for (const auto& e : c.additions) {
    if (e.first < 0 || e.second >= n || e.first >= e.second) return false;
    if (g.has_edge(e.first, e.second) || !seen.insert(key(e)).second) return false;
  }
  for (const auto& e : c.deletions) {
    if (e.first < 0 || e.second >= n || e.first >= e.second) return false;
    if (!g.has_edge(e.first, e.second) || !seen.insert(key(e)).second) return false;
  }
  return true;
}

EditSet to_edit_set(const Chromosome& c) { return EditSet{c.additions, c.deletions}; }

}  // namespace mdeo
