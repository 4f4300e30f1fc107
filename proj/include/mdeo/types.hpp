#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace mdeo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;  // stored normalized, first < second
using EdgeList = std::vector<Edge>;

inline Edge make_edge(NodeId u, NodeId v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

}  // namespace mdeo
