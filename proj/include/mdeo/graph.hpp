#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdeo/types.hpp"

namespace mdeo {

// Immutable undirected simple graph. Node ids are 0..node_count-1, edges are
// stored normalized (u < v) and sorted. Edits produce new graphs, so values
// can be shared freely across worker threads.
class Graph {
 public:
  Graph() = default;
  Graph(int node_count, EdgeList edges);
  Graph(int node_count, EdgeList edges, std::vector<double> weights);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const EdgeList& edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }

  bool has_edge(NodeId u, NodeId v) const;
  double weight(NodeId u, NodeId v) const;  // 0 when the edge is absent
  bool weighted() const { return !weights_.empty(); }

  int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  double weighted_degree(NodeId v) const;
  double max_weighted_degree() const;

 private:
  std::uint64_t edge_key(NodeId u, NodeId v) const;

  int n_ = 0;
  EdgeList edges_;
  std::vector<double> weights_;  // parallel to edges_; empty means all 1
  std::vector<std::vector<NodeId>> adj_;
  std::unordered_map<std::uint64_t, int> edge_index_;
};

// E+ / E- of one candidate rewiring. Additions must be absent from the base
// graph, deletions present in it.
struct EditSet {
  EdgeList additions;
  EdgeList deletions;

  bool empty() const { return additions.empty() && deletions.empty(); }
  int size() const { return static_cast<int>(additions.size() + deletions.size()); }
};

struct LoadResult {
  Graph graph;
  std::vector<std::string> labels;  // dense id -> original token
  std::unordered_map<std::string, NodeId> label_to_id;
  int dropped_self_loops = 0;
  int dropped_duplicates = 0;
};

// One edge per line, two whitespace-separated tokens; '#' starts a comment
// line. Tokens may be arbitrary strings and are densely re-indexed in order
// of first appearance. Self-loops and duplicate lines are dropped (counted).
LoadResult load_edge_list(const std::filesystem::path& path);

// E' = (E u additions) \ deletions. Throws listing the offending pairs when
// an addition is already present or a deletion is absent.
Graph apply_edits(const Graph& g, const EditSet& ops);

// Triangle-motif reweighting: edge (u,v) keeps weight |N(u) n N(v)|, edges in
// no triangle are dropped. Weighted degrees of the result feed the degree
// statistics of the similarity module.
Graph motif_weighted_graph(const Graph& g);

}  // namespace mdeo
