#include "mdeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace mdeo {

namespace {

// n_ij contingency counts plus marginals for a pair of partitions.
struct Contingency {
  std::vector<std::vector<long long>> cell;
  std::vector<long long> row, col;
  long long n = 0;
};

Contingency contingency(const Partition& a, const Partition& b) {
  if (a.assignment.size() != b.assignment.size())
    throw std::invalid_argument("partitions cover different node sets");
  Contingency t;
  t.cell.assign(a.community_count(), std::vector<long long>(b.community_count(), 0));
  t.row.assign(a.community_count(), 0);
  t.col.assign(b.community_count(), 0);
  t.n = static_cast<long long>(a.assignment.size());
  for (std::size_t v = 0; v < a.assignment.size(); ++v) {
    ++t.cell[a.assignment[v]][b.assignment[v]];
    ++t.row[a.assignment[v]];
    ++t.col[b.assignment[v]];
  }
  return t;
}

double choose2(long long k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k - 1); }

}  // namespace

double nmi(const Partition& a, const Partition& b) {
  const Contingency t = contingency(a, b);
  const double n = static_cast<double>(t.n);
  double mi = 0, ha = 0, hb = 0;
  for (long long r : t.row)
    if (r > 0) ha -= (r / n) * std::log(r / n);
  for (long long c : t.col)
    if (c > 0) hb -= (c / n) * std::log(c / n);
  for (int i = 0; i < (int)t.row.size(); ++i)
    for (int j = 0; j < (int)t.col.size(); ++j) {
      const long long nij = t.cell[i][j];
      if (nij == 0) continue;
      mi += (nij / n) * std::log(nij * n / (static_cast<double>(t.row[i]) * t.col[j]));
    }
  if (ha + hb == 0) return 1.0;  // both partitions are a single cluster
  return 2.0 * mi / (ha + hb);
}

double ari(const Partition& a, const Partition& b) {
  const Contingency t = contingency(a, b);
  double idx = 0, sa = 0, sb = 0;
  for (const auto& row : t.cell)
    for (long long c : row) idx += choose2(c);
  for (long long r : t.row) sa += choose2(r);
  for (long long c : t.col) sb += choose2(c);
  const double total = choose2(t.n);
  const double expected = total > 0 ? sa * sb / total : 0.0;
  const double maximum = 0.5 * (sa + sb);
  if (maximum == expected) return 1.0;
  return (idx - expected) / (maximum - expected);
}

std::vector<double> betweenness_centrality(const Graph& g) {
  const int n = g.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<int> dist(n), stack;
  std::vector<double> sigma(n), delta(n);
  std::vector<std::vector<int>> pred(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    stack.clear();
    dist[s] = 0;
    sigma[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      stack.push_back(v);
      for (int w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      const int w = *it;
      for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  for (double& x : bc) x *= 0.5;  // each unordered pair was counted twice
  return bc;
}

Vector pagerank(const Graph& g, double damping, double tol) {
  const int n = g.node_count();
  if (n == 0) throw std::invalid_argument("pagerank of empty graph");
  Vector r = Vector::Constant(n, 1.0 / n);
  Vector next(n);
  for (int iter = 0; iter < 10000; ++iter) {
    double dangling = 0;
    for (int v = 0; v < n; ++v)
      if (g.degree(v) == 0) dangling += r[v];
    next.setConstant((1.0 - damping) / n + damping * dangling / n);
    for (int v = 0; v < n; ++v) {
      const double share = damping * r[v] / std::max(g.degree(v), 1);
      if (g.degree(v) == 0) continue;
      for (int w : g.neighbors(v)) next[w] += share;
    }
    const double diff = (next - r).cwiseAbs().sum();
    r = next;
    if (diff < tol) break;
  }
  return r;
}

double mean_local_clustering(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) return 0.0;
  double sum = 0;
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    if (d < 2) continue;
    auto nb = g.neighbors(v);
    int links = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g.has_edge(nb[i], nb[j])) ++links;
    sum += 2.0 * links / (static_cast<double>(d) * (d - 1));
  }
  return sum / n;
}

double avg_shortest_distance_lcc(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> comp(n, -1);
  int best_root = -1, best_size = 0, ncomp = 0;
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int size = 0;
    std::queue<int> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      ++size;
      for (int w : g.neighbors(v))
        if (comp[w] < 0) {
          comp[w] = ncomp;
          q.push(w);
        }
    }
    if (size > best_size) {
      best_size = size;
      best_root = s;
    }
    ++ncomp;
  }
  if (best_size < 2) return 0.0;
  const int cid = comp[best_root];
  double total = 0;
  long long pairs = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != cid) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    for (int t = s + 1; t < n; ++t)
      if (comp[t] == cid) {
        total += dist[t];
        ++pairs;
      }
  }
  return total / pairs;
}

std::vector<NodeId> top_fraction_nodes(const std::vector<double>& score, double fraction) {
  const int n = static_cast<int>(score.size());
  const int k = std::min(n, static_cast<int>(std::ceil(fraction * n)));
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  });
  ids.resize(k);
  return ids;
}

namespace {

double overlap_fraction(const std::vector<double>& before, const std::vector<double>& after) {
  const auto ta = top_fraction_nodes(before);
  const auto tb = top_fraction_nodes(after);
  if (ta.empty()) return 0.0;
  std::vector<char> in_b(before.size(), 0);
  for (NodeId v : tb) in_b[v] = 1;
  int common = 0;
  for (NodeId v : ta) common += in_b[v];
  return static_cast<double>(common) / ta.size();
}

}  // namespace

StructuralReport structural_report(const Graph& g, const EditSet& edits,
                                   const CommunityDetector& detector) {
  StructuralReport rep;
  rep.edits_count = static_cast<int>(edits.size());
  const Graph h = apply_edits(g, edits);

  rep.clustering_before = mean_local_clustering(g);
  rep.clustering_after = mean_local_clustering(h);
  rep.asd_before = avg_shortest_distance_lcc(g);
  rep.asd_after = avg_shortest_distance_lcc(h);
  rep.betweenness_overlap = overlap_fraction(betweenness_centrality(g), betweenness_centrality(h));

  const Vector pr_g = pagerank(g), pr_h = pagerank(h);
  rep.pagerank_overlap =
      overlap_fraction(std::vector<double>(pr_g.data(), pr_g.data() + pr_g.size()),
                       std::vector<double>(pr_h.data(), pr_h.data() + pr_h.size()));

  rep.modularity_before = modularity(g, detector.detect(g));
  rep.modularity_after = modularity(h, detector.detect(h));
  return rep;
}

}  // namespace mdeo
