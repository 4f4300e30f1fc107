#include "mdeo/community.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace mdeo {

Partition Partition::from_assignment(const std::vector<int>& raw) {
  Partition p;
  p.assignment.assign(raw.size(), -1);
  std::unordered_map<int, int> relabel;
  for (size_t v = 0; v < raw.size(); ++v) {
    auto [it, inserted] = relabel.emplace(raw[v], static_cast<int>(relabel.size()));
    p.assignment[v] = it->second;
    if (inserted) p.communities.emplace_back();
    p.communities[it->second].push_back(static_cast<NodeId>(v));
  }
  return p;
}

namespace {

// Agglomeration state: one slot per initial node; a slot's id is the smallest
// node id of its community, which drives deterministic tie-breaking.
struct CnmState {
  std::vector<bool> alive;
  std::vector<int> id;
  std::vector<double> dsum;
  std::vector<std::vector<NodeId>> members;
  std::vector<std::unordered_map<int, double>> between;  // slot -> shared edge count
};

}  // namespace

Partition detect_greedy_modularity(const Graph& g) {
  const int n = g.node_count();
  const double m = g.edge_count();
  if (g.edge_count() == 0)
    throw std::invalid_argument("detect_greedy_modularity: graph has no edges");

  CnmState st;
  st.alive.assign(n, true);
  st.id.resize(n);
  st.dsum.resize(n);
  st.members.resize(n);
  st.between.resize(n);
  for (int v = 0; v < n; ++v) {
    st.id[v] = v;
    st.dsum[v] = g.degree(v);
    st.members[v] = {v};
  }
  for (const auto& [u, v] : g.edges()) {
    st.between[u][v] += 1.0;
    st.between[v][u] += 1.0;
  }

  const double inv_m = 1.0 / m;
  const double inv_2m2 = 1.0 / (2.0 * m * m);

  while (true) {
    double best_gain = 0.0;
    int best_a = -1, best_b = -1;
    for (int a = 0; a < n; ++a) {
      if (!st.alive[a]) continue;
      for (const auto& [b, e_ab] : st.between[a]) {
        if (b <= a) continue;  // each live pair appears once with a < b
        double gain = e_ab * inv_m - st.dsum[a] * st.dsum[b] * inv_2m2;
        if (gain <= 0.0) continue;
        int lo = std::min(st.id[a], st.id[b]);
        int hi = std::max(st.id[a], st.id[b]);
        int cur_lo = best_a < 0 ? 0 : std::min(st.id[best_a], st.id[best_b]);
        int cur_hi = best_a < 0 ? 0 : std::max(st.id[best_a], st.id[best_b]);
        if (best_a < 0 || gain > best_gain ||
            (gain == best_gain && std::pair(lo, hi) < std::pair(cur_lo, cur_hi))) {
          best_gain = gain;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a < 0) break;

    // Merge b into a; keep the smaller id on the surviving slot.
    int a = best_a, b = best_b;
    st.id[a] = std::min(st.id[a], st.id[b]);
    st.dsum[a] += st.dsum[b];
    st.members[a].insert(st.members[a].end(), st.members[b].begin(), st.members[b].end());
    st.members[b].clear();
    st.between[a].erase(b);
    st.between[b].erase(a);
    for (const auto& [c, e] : st.between[b]) {
      st.between[a][c] += e;
      st.between[c].erase(b);
      st.between[c][a] = st.between[a][c];
    }
    st.between[b].clear();
    st.alive[b] = false;
  }

  std::vector<int> raw(n, -1);
  std::vector<std::pair<int, int>> order;  // (community id, slot)
  for (int s = 0; s < n; ++s)
    if (st.alive[s]) order.emplace_back(st.id[s], s);
  std::sort(order.begin(), order.end());
  for (size_t c = 0; c < order.size(); ++c)
    for (NodeId v : st.members[order[c].second]) raw[v] = static_cast<int>(c);

  Partition p;
  p.assignment = std::move(raw);
  p.communities.resize(order.size());
  for (int v = 0; v < n; ++v) p.communities[p.assignment[v]].push_back(v);
  return p;
}

double modularity(const Graph& g, const Partition& p) {
  if (static_cast<int>(p.assignment.size()) != g.node_count())
    throw std::invalid_argument("modularity: partition does not cover the graph");
  const double m = g.edge_count();
  if (m == 0) return 0.0;

  const int k = p.community_count();
  std::vector<double> intra(k, 0.0), dsum(k, 0.0);
  for (const auto& [u, v] : g.edges())
    if (p.assignment[u] == p.assignment[v]) intra[p.assignment[u]] += 1.0;
  for (int v = 0; v < g.node_count(); ++v) dsum[p.assignment[v]] += g.degree(v);

  double q = 0.0;
  for (int c = 0; c < k; ++c) {
    double frac = dsum[c] / (2.0 * m);
    q += intra[c] / m - frac * frac;
  }
  return q;
}

}  // namespace mdeo
