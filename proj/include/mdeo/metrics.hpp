#pragma once

#include <vector>

#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

// Partition agreement. NMI uses the arithmetic-mean normalization
// 2 I / (H1 + H2) and returns 1 when both partitions are single-cluster.
double nmi(const Partition& a, const Partition& b);

// Permutation-adjusted Rand index; 1 when max index equals expected index.
double ari(const Partition& a, const Partition& b);

// Brandes betweenness over unordered pairs (undirected halving).
std::vector<double> betweenness_centrality(const Graph& g);

// Power iteration with uniform teleport; dangling mass redistributed
// uniformly. The result sums to 1.
Vector pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10);

double mean_local_clustering(const Graph& g);

// Mean BFS distance over unordered node pairs of the largest connected
// component.
double avg_shortest_distance_lcc(const Graph& g);

// Indices of the ceil(0.2 n) top-scoring nodes, ties broken by node id.
std::vector<NodeId> top_fraction_nodes(const std::vector<double>& score, double fraction = 0.2);

struct StructuralReport {
  int edits_count = 0;
  double clustering_before = 0, clustering_after = 0;
  double asd_before = 0, asd_after = 0;
  double betweenness_overlap = 0;  // |top20 before ∩ top20 after| / |top20 before|
  double pagerank_overlap = 0;
  double modularity_before = 0, modularity_after = 0;
};

StructuralReport structural_report(const Graph& g, const EditSet& edits,
                                   const CommunityDetector& detector);

}  // namespace mdeo
