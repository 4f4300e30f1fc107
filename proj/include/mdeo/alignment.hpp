#pragma once

#include <utility>
#include <vector>

#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

struct AlignmentConfig {
  int epochs = 500;
  double lr = 0.01;

  bool operator==(const AlignmentConfig&) const = default;
};

// Anchor node pairs drawn from aligned communities plus, per anchor, the
// least-connected neighbor groups used for the soft matching term.
struct AnchorSet {
  std::vector<std::pair<NodeId, NodeId>> anchors;
  // parallel to anchors; both sides of an entry have equal size (possibly 0)
  std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> small_groups;
};

AnchorSet select_anchors(const Graph& ga, const Partition& pa, const Graph& gb,
                         const Partition& pb,
                         const std::vector<std::pair<int, int>>& aligned_pairs);

// Affine maps between the two embedding spaces, row convention z W + b.
struct AlignmentModel {
  Matrix w_ab, w_ba;
  Eigen::RowVectorXd b_ab, b_ba;

  Eigen::RowVectorXd map_ab(const Eigen::RowVectorXd& z) const { return z * w_ab + b_ab; }
  Eigen::RowVectorXd map_ba(const Eigen::RowVectorXd& z) const { return z * w_ba + b_ba; }
};

struct AlignmentLosses {
  double large = 0;  // two-way anchor MSE
  double small = 0;  // neighbor-group cross terms, 1/k_s each
  double us = 0;     // automapping, averaged over all nodes of both sides
  double total() const { return large + small + us; }
};

AlignmentLosses alignment_losses(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                                 const AlignmentModel& model);

// Sum of the three components, the quantity optimized by train_alignment.
// Exposed separately for gradient checking.
double alignment_loss(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                      const AlignmentModel& model);

struct AlignmentGradients {
  AlignmentLosses losses;
  Matrix w_ab, w_ba;
  Eigen::RowVectorXd b_ab, b_ba;
};

// Losses plus analytic gradients of the total loss at the given model.
AlignmentGradients alignment_gradients(const Matrix& za, const Matrix& zb,
                                       const AnchorSet& set, const AlignmentModel& model);

struct AlignmentResult {
  AlignmentModel model;
  std::vector<double> loss_history;
};

// Gradient descent from the identity map.
AlignmentResult train_alignment(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                                const AlignmentConfig& cfg = {});

// For each node of A, the node of B whose embedding is Euclidean-nearest to
// the mapped embedding; ties resolve to the smallest node id.
std::vector<NodeId> node_mapping(const Matrix& za, const Matrix& zb, const AlignmentModel& model);

}  // namespace mdeo
