#include "mdeo/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mdeo {

std::uint64_t Graph::edge_key(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

Graph::Graph(int node_count, EdgeList edges) : Graph(node_count, std::move(edges), {}) {}

Graph::Graph(int node_count, EdgeList edges, std::vector<double> weights)
    : n_(node_count), edges_(std::move(edges)), weights_(std::move(weights)) {
  if (n_ < 0) throw std::invalid_argument("graph: negative node count");
  if (!weights_.empty() && weights_.size() != edges_.size())
    throw std::invalid_argument("graph: weight list does not match edge list");

  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_) throw std::invalid_argument("graph: node id out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
  }
  if (weights_.empty()) {
    std::sort(edges_.begin(), edges_.end());
  } else {
    std::vector<int> order(edges_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return edges_[a] < edges_[b]; });
    EdgeList se(edges_.size());
    std::vector<double> sw(weights_.size());
    for (size_t i = 0; i < order.size(); ++i) {
      se[i] = edges_[order[i]];
      sw[i] = weights_[order[i]];
    }
    edges_ = std::move(se);
    weights_ = std::move(sw);
  }

  adj_.assign(n_, {});
  edge_index_.reserve(edges_.size() * 2);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& [u, v] = edges_[i];
    if (i > 0 && edges_[i] == edges_[i - 1])
      throw std::invalid_argument("graph: duplicate edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edge_index_.emplace(edge_key(u, v), static_cast<int>(i));
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return false;
  return edge_index_.count(edge_key(u, v)) > 0;
}

double Graph::weight(NodeId u, NodeId v) const {
  auto it = edge_index_.find(edge_key(u, v));
  if (it == edge_index_.end()) return 0.0;
  return weights_.empty() ? 1.0 : weights_[it->second];
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nbrs : adj_) d = std::max(d, static_cast<int>(nbrs.size()));
  return d;
}

double Graph::weighted_degree(NodeId v) const {
  if (weights_.empty()) return static_cast<double>(degree(v));
  double s = 0.0;
  for (NodeId u : adj_[v]) s += weight(v, u);
  return s;
}

double Graph::max_weighted_degree() const {
  double d = 0.0;
  for (NodeId v = 0; v < n_; ++v) d = std::max(d, weighted_degree(v));
  return d;
}

LoadResult load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path.string());

  LoadResult result;
  std::unordered_set<std::uint64_t> seen;
  EdgeList edges;
  std::string line;
  int line_no = 0;

  auto intern = [&](const std::string& token) -> NodeId {
    auto it = result.label_to_id.find(token);
    if (it != result.label_to_id.end()) return it->second;
    NodeId id = static_cast<NodeId>(result.labels.size());
    result.labels.push_back(token);
    result.label_to_id.emplace(token, id);
    return id;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;           // blank line
    if (a[0] == '#') continue;          // comment
    if (!(ss >> b) || (ss >> extra)) {
      throw std::runtime_error("edge list " + path.string() + ": line " +
                               std::to_string(line_no) + " does not hold exactly two tokens");
    }
    NodeId u = intern(a);
    NodeId v = intern(b);
    if (u == v) {
      ++result.dropped_self_loops;
      continue;
    }
    auto [lo, hi] = make_edge(u, v);
    std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint64_t>(hi);
    if (!seen.insert(key).second) {
      ++result.dropped_duplicates;
      continue;
    }
    edges.emplace_back(lo, hi);
  }
  result.graph = Graph(static_cast<int>(result.labels.size()), std::move(edges));
  return result;
}

Graph apply_edits(const Graph& g, const EditSet& ops) {
  std::string offenders;
  for (const auto& [u, v] : ops.additions) {
    if (g.has_edge(u, v))
      offenders += " +(" + std::to_string(u) + "," + std::to_string(v) + ")";
  }
  for (const auto& [u, v] : ops.deletions) {
    if (!g.has_edge(u, v))
      offenders += " -(" + std::to_string(u) + "," + std::to_string(v) + ")";
  }
  if (!offenders.empty())
    throw std::invalid_argument("apply_edits: invalid operations:" + offenders);

  std::unordered_set<std::uint64_t> to_delete;
  for (const auto& [u, v] : ops.deletions) {
    auto [lo, hi] = make_edge(u, v);
    to_delete.insert((static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint64_t>(hi));
  }
  EdgeList edges;
  edges.reserve(g.edge_count() + ops.additions.size());
  for (const auto& [u, v] : g.edges()) {
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
    if (!to_delete.count(key)) edges.emplace_back(u, v);
  }
  for (const auto& [u, v] : ops.additions) edges.push_back(make_edge(u, v));
  return Graph(g.node_count(), std::move(edges));
}

Graph motif_weighted_graph(const Graph& g) {
  EdgeList kept;
  std::vector<double> weights;
  for (const auto& [u, v] : g.edges()) {
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    int common = 0;
    size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i] == nv[j]) {
        ++common;
        ++i;
        ++j;
      } else if (nu[i] < nv[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    if (common > 0) {
      kept.emplace_back(u, v);
      weights.push_back(static_cast<double>(common));
    }
  }
  return Graph(g.node_count(), std::move(kept), std::move(weights));
}

}  // namespace mdeo
