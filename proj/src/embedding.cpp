#include "mdeo/embedding.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace mdeo {

namespace {

// Harmonic-free closeness restricted to the node's component:
// (|comp| - 1) / sum of BFS distances, 0 for isolated nodes.
std::vector<double> component_closeness(const Graph& g) {
  const int n = g.node_count();
  std::vector<double> close(n, 0.0);
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    long long total = 0;
    int reached = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      total += dist[v];
      ++reached;
      for (int w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    if (reached > 1) close[s] = static_cast<double>(reached - 1) / total;
  }
  return close;
}

Matrix uniform_init(int rows, int cols, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(rows));
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = (2.0 * rng.uniform01() - 1.0) * bound;
  return m;
}

}  // namespace

Matrix node_features(const Graph& g, const Partition& p) {
  const int n = g.node_count();
  if ((int)p.assignment.size() != n)
    throw std::invalid_argument("partition does not match graph");
  Matrix x(n, 4);
  const int dmax = g.max_degree();
  const auto close = component_closeness(g);
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    x(v, 0) = dmax > 0 ? static_cast<double>(d) / dmax : 0.0;
    x(v, 1) = close[v];
    x(v, 2) = static_cast<double>(p.communities[p.assignment[v]].size()) / n;
    int intra = 0;
    for (int w : g.neighbors(v)) intra += p.assignment[w] == p.assignment[v];
    x(v, 3) = d > 0 ? static_cast<double>(intra) / d : 0.0;
  }
  return x;
}

Matrix normalized_adjacency(const Graph& g) {
  const int n = g.node_count();
  Matrix a = Matrix::Zero(n, n);
  for (const auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  for (int v = 0; v < n; ++v) a(v, v) = 1.0;
  Vector dinv = a.rowwise().sum().array().rsqrt();
  return dinv.asDiagonal() * a * dinv.asDiagonal();
}

Matrix GaeModel::encode(const Matrix& a_hat, const Matrix& x) const {
  const Matrix h = (a_hat * x * w0).cwiseMax(0.0);
  return a_hat * h * w1;
}

Matrix decode(const Matrix& z) {
  return ((-(z * z.transpose())).array().exp() + 1.0).inverse();
}

Matrix reconstruction_target(const Graph& g) {
  const int n = g.node_count();
  Matrix target = Matrix::Zero(n, n);
  for (const auto& [u, v] : g.edges()) target(u, v) = target(v, u) = 1.0;
  for (int v = 0; v < n; ++v) target(v, v) = 1.0;
  return target;
}

double reconstruction_loss(const Matrix& probs, const Matrix& target) {
  const int n = static_cast<int>(target.rows());
  const double total = static_cast<double>(n) * n;
  const double positives = target.sum();
  const double wpos = (total - positives) / positives;
  double loss = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double p = std::min(std::max(probs(i, j), 1e-7), 1.0 - 1e-7);
      loss += target(i, j) > 0.5 ? -wpos * std::log(p) : -std::log(1.0 - p);
    }
  return loss / total;
}

GaeGradients gae_gradients(const Matrix& a_hat, const Matrix& x, const Matrix& target,
                           const GaeModel& model) {
  const int n = static_cast<int>(target.rows());
  const double total = static_cast<double>(n) * n;
  const double wpos = (total - target.sum()) / target.sum();

  const Matrix ax = a_hat * x;
  const Matrix h_pre = ax * model.w0;
  const Matrix h = h_pre.cwiseMax(0.0);
  const Matrix z = a_hat * h * model.w1;
  const Matrix probs = decode(z);

  GaeGradients out;
  out.loss = reconstruction_loss(probs, target);

  // dL/dS for the weighted sigmoid cross-entropy (S = Z Z^T), then back
  // through the decoder and the two graph-convolution layers.
  Matrix g_s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = target(i, j) > 0.5 ? wpos : 1.0;
      g_s(i, j) = w * (probs(i, j) - target(i, j)) / total;
    }
  const Matrix dz = (g_s + g_s.transpose()) * z;
  const Matrix a_dz = a_hat * dz;
  out.dw1 = h.transpose() * a_dz;
  Matrix dh_pre = a_dz * model.w1.transpose();
  dh_pre = (h_pre.array() > 0.0).select(dh_pre, 0.0);
  out.dw0 = ax.transpose() * dh_pre;
  return out;
}

GaeResult train_gae(const Graph& g, const Partition& p, const GaeConfig& cfg, Rng& rng) {
  const Matrix x = node_features(g, p);
  const Matrix a_hat = normalized_adjacency(g);
  const Matrix target = reconstruction_target(g);

  GaeModel model;
  model.w0 = uniform_init(4, cfg.hidden, rng);
  model.w1 = uniform_init(cfg.hidden, cfg.embed, rng);

  GaeResult out;
  out.loss_history.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const GaeGradients grads = gae_gradients(a_hat, x, target, model);
    if (!std::isfinite(grads.loss))
      throw std::runtime_error("embedding training diverged; decrease the learning rate");
    out.loss_history.push_back(grads.loss);
    model.w0 -= cfg.lr * grads.dw0;
    model.w1 -= cfg.lr * grads.dw1;
  }

  out.embedding = model.encode(a_hat, x);
  const double final_loss = reconstruction_loss(decode(out.embedding), target);
  if (!std::isfinite(final_loss) || final_loss > out.loss_history.front())
    throw std::runtime_error("embedding training diverged; decrease the learning rate");
  out.model = std::move(model);
  return out;
}

}  // namespace mdeo
