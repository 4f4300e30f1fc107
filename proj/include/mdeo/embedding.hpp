#pragma once

#include <vector>

#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/rng.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

struct GaeConfig {
  int hidden = 32;
  int embed = 16;
  int epochs = 300;
  double lr = 0.01;

  bool operator==(const GaeConfig&) const = default;
};

// Per-node input features, n x 4: normalized degree, closeness within the
// node's component, relative community size, intra-community degree fraction.
Matrix node_features(const Graph& g, const Partition& p);

// Symmetric renormalized adjacency D^{-1/2} (A + I) D^{-1/2}.
Matrix normalized_adjacency(const Graph& g);

struct GaeModel {
  Matrix w0, w1;

  // Z = A_hat ReLU(A_hat X W0) W1
  Matrix encode(const Matrix& a_hat, const Matrix& x) const;
};

// Inner-product decoder sigma(Z Z^T), entries in (0, 1).
Matrix decode(const Matrix& z);

// Self-loop-augmented adjacency of g, the reconstruction target.
Matrix reconstruction_target(const Graph& g);

// Mean binary cross-entropy over all n^2 entries with positive entries
// weighted by (n^2 - P) / P; probabilities are clipped to [1e-7, 1 - 1e-7].
double reconstruction_loss(const Matrix& probs, const Matrix& target);

struct GaeGradients {
  double loss = 0;
  Matrix dw0, dw1;
};

// Loss and analytic weight gradients at the given model, one full batch.
GaeGradients gae_gradients(const Matrix& a_hat, const Matrix& x, const Matrix& target,
                           const GaeModel& model);

struct GaeResult {
  Matrix embedding;                  // n x embed
  GaeModel model;
  std::vector<double> loss_history;  // one entry per epoch, pre-update
};

// Full-batch gradient descent on the weighted reconstruction loss. Throws
// if the loss turns non-finite or ends above its initial value.
GaeResult train_gae(const Graph& g, const Partition& p, const GaeConfig& cfg, Rng& rng);

}  // namespace mdeo
