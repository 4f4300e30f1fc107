#include "mdeo/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mdeo {

DegreeHistogram degree_interval_histogram(std::span<const NodeId> community, const Graph& g) {
  if (community.empty())
    throw std::invalid_argument("degree_interval_histogram: empty community");

  const double dmax = g.max_weighted_degree();
  DegreeHistogram h;
  h.community_size = static_cast<int>(community.size());
  for (NodeId v : community) {
    double x = dmax > 0.0 ? g.weighted_degree(v) / dmax : 0.0;
    int bin = std::min(static_cast<int>(x / 0.2), 4);  // x = 1.0 clamps into the top bin
    h.bins[bin] += 1.0;
  }
  for (double& b : h.bins) b /= h.community_size;
  return h;
}

namespace {

constexpr double kSmoothing = 1e-6;

std::array<double, 5> smoothed(const std::array<double, 5>& bins) {
  std::array<double, 5> out;
  double total = 0.0;
  for (size_t i = 0; i < bins.size(); ++i) {
    out[i] = bins[i] + kSmoothing;
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

double kl(const std::array<double, 5>& p, const std::array<double, 5>& q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

}  // namespace

double symmetric_kl(const DegreeHistogram& a, const DegreeHistogram& b) {
  auto p = smoothed(a.bins);
  auto q = smoothed(b.bins);
  return 0.5 * (kl(p, q) + kl(q, p));
}

double community_diff(const DegreeHistogram& a, const DegreeHistogram& b) {
  double ratio = std::max(static_cast<double>(a.community_size) / b.community_size,
                          static_cast<double>(b.community_size) / a.community_size);
  return symmetric_kl(a, b) * ratio;
}

double community_similarity(std::span<const NodeId> ca, std::span<const NodeId> cb,
                            const Graph& ga, const Graph& gb,
                            const Graph& ga_motif, const Graph& gb_motif) {
  DegreeHistogram ha = degree_interval_histogram(ca, ga);
  DegreeHistogram hb = degree_interval_histogram(cb, gb);
  DegreeHistogram ham = degree_interval_histogram(ca, ga_motif);
  DegreeHistogram hbm = degree_interval_histogram(cb, gb_motif);
  return std::exp(-community_diff(ha, hb)) + std::exp(-community_diff(ham, hbm));
}

AlignedCommunities align_communities(const Matrix& s) {
  const int k = static_cast<int>(s.rows());
  const int kp = static_cast<int>(s.cols());
  Matrix work = s;
  std::vector<bool> row_used(k, false), col_used(kp, false);

  AlignedCommunities out;
  const int rounds = std::min(k, kp);
  for (int r = 0; r < rounds; ++r) {
    int bi = -1, bj = -1;
    double best = -1.0;
    for (int i = 0; i < k; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < kp; ++j) {
        if (col_used[j]) continue;
        if (work(i, j) > best) {  // strict: ties fall to the smallest (i, j)
          best = work(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    row_used[bi] = true;
    col_used[bj] = true;
    out.pairs.emplace_back(bi, bj);
    out.values.push_back(best);
  }
  return out;
}

NetworkProfile NetworkProfile::build(Graph g) {
  Partition p = detect_greedy_modularity(g);
  return build(std::move(g), std::move(p));
}

NetworkProfile NetworkProfile::build(Graph g, Partition p) {
  NetworkProfile prof;
  prof.motif = motif_weighted_graph(g);
  prof.graph = std::move(g);
  prof.partition = std::move(p);
  for (const auto& c : prof.partition.communities) {
    prof.plain_hist.push_back(degree_interval_histogram(c, prof.graph));
    prof.motif_hist.push_back(degree_interval_histogram(c, prof.motif));
  }
  return prof;
}

Matrix community_similarity_matrix(const NetworkProfile& a, const NetworkProfile& b) {
  const int k = a.partition.community_count();
  const int kp = b.partition.community_count();
  Matrix s(k, kp);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < kp; ++j) {
      s(i, j) = std::exp(-community_diff(a.plain_hist[i], b.plain_hist[j])) +
                std::exp(-community_diff(a.motif_hist[i], b.motif_hist[j]));
    }
  }
  return s;
}

double graph_similarity(const NetworkProfile& a, const NetworkProfile& b) {
  AlignedCommunities aligned = align_communities(community_similarity_matrix(a, b));
  if (aligned.values.empty())
    throw std::invalid_argument("graph_similarity: no communities to align");
  double mean = std::accumulate(aligned.values.begin(), aligned.values.end(), 0.0) /
                static_cast<double>(aligned.values.size());
  return mean / 2.0;  // max pair similarity is 2
}

double graph_similarity(const Graph& a, const Graph& b) {
  return graph_similarity(NetworkProfile::build(a), NetworkProfile::build(b));
}

Matrix pairwise_similarity_matrix(std::span<const NetworkProfile> profiles) {
  const int n = static_cast<int>(profiles.size());
  Matrix s = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s(i, j) = s(j, i) = graph_similarity(profiles[i], profiles[j]);
  return s;
}

SimilarityState init_similarity_and_assisted(std::span<const NetworkProfile> profiles,
                                             int assisted_override) {
  if (profiles.size() < 2)
    throw std::invalid_argument("init_similarity_and_assisted: need at least 2 networks");
  return init_similarity_and_assisted(pairwise_similarity_matrix(profiles), assisted_override);
}

SimilarityState init_similarity_and_assisted(const Matrix& pairwise, int assisted_override) {
  const int n = static_cast<int>(pairwise.rows());
  if (n < 2)
    throw std::invalid_argument("init_similarity_and_assisted: need at least 2 networks");

  int want = assisted_override > 0
                 ? assisted_override
                 : std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
  want = std::min(want, n - 1);

  SimilarityState st;
  st.values = pairwise;
  st.assisted.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    std::sort(others.begin(), others.end(), [&](int a, int b) {
      if (st.values(i, a) != st.values(i, b)) return st.values(i, a) > st.values(i, b);
      return a < b;
    });
    others.resize(want);
    std::sort(others.begin(), others.end());
    st.assisted[i] = others;

    double total = 0.0;
    for (int j : st.assisted[i]) total += st.values(i, j);
    for (int j = 0; j < n; ++j) {
      bool keep = std::binary_search(st.assisted[i].begin(), st.assisted[i].end(), j);
      st.values(i, j) = keep ? st.values(i, j) / total : 0.0;
    }
  }
  return st;
}

}  // namespace mdeo
