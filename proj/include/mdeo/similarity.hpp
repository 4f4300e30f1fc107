#pragma once

#include <array>
#include <span>
#include <vector>

#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

// Degree-interval distribution of one community: five bins of width 0.2 over
// degrees normalized by the network-wide maximum. Bins sum to 1.
struct DegreeHistogram {
  std::array<double, 5> bins{};
  int community_size = 0;
};

// Uses weighted degrees when g carries weights (motif graphs); a zero max
// degree puts every member in bin 0.
DegreeHistogram degree_interval_histogram(std::span<const NodeId> community, const Graph& g);

// Symmetric KL with additive smoothing (1e-6 per bin, renormalized).
double symmetric_kl(const DegreeHistogram& a, const DegreeHistogram& b);

// Diff = symmetric KL x max(|C|/|C'|, |C'|/|C|).
double community_diff(const DegreeHistogram& a, const DegreeHistogram& b);

// S(C, C') = exp(-Diff) + exp(-Diff_motif), in (0, 2].
double community_similarity(std::span<const NodeId> ca, std::span<const NodeId> cb,
                            const Graph& ga, const Graph& gb,
                            const Graph& ga_motif, const Graph& gb_motif);

// Greedy one-to-one matching of communities by similarity: min(k, k') rounds
// of taking the global maximum and zeroing its row and column. Ties broken by
// the smallest (row, col).
struct AlignedCommunities {
  std::vector<std::pair<int, int>> pairs;  // (community in A, community in B)
  std::vector<double> values;
};

AlignedCommunities align_communities(const Matrix& s);

// Everything graph similarity needs about one network, computed once:
// partition of the plain graph plus per-community histograms on the plain and
// motif graphs.
struct NetworkProfile {
  Graph graph;
  Graph motif;
  Partition partition;
  std::vector<DegreeHistogram> plain_hist;
  std::vector<DegreeHistogram> motif_hist;

  static NetworkProfile build(Graph g);
  static NetworkProfile build(Graph g, Partition p);
};

Matrix community_similarity_matrix(const NetworkProfile& a, const NetworkProfile& b);

// Mean similarity of aligned community pairs, divided by 2 so the result is
// in (0, 1] and a graph scores 1 against itself.
double graph_similarity(const NetworkProfile& a, const NetworkProfile& b);
double graph_similarity(const Graph& a, const Graph& b);

// Pairwise similarity state plus the assisted set of each network: the
// round(sqrt(|G|)) most similar networks (at least 1). Rows are zeroed
// outside the assisted set and normalized over it to sum 1.
struct SimilarityState {
  Matrix values;
  std::vector<std::vector<int>> assisted;
};

SimilarityState init_similarity_and_assisted(std::span<const NetworkProfile> profiles,
                                             int assisted_override = 0);
SimilarityState init_similarity_and_assisted(const Matrix& pairwise, int assisted_override = 0);

// Raw symmetric pairwise matrix before zeroing/normalization (diagonal 1).
Matrix pairwise_similarity_matrix(std::span<const NetworkProfile> profiles);

}  // namespace mdeo
