#include "mdeo/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdeo {

namespace {

// Members ranked by degree (descending for anchors, ascending for the
// neighbor groups), node id breaking ties.
std::vector<NodeId> ranked(const Graph& g, std::vector<NodeId> nodes, bool descending) {
  std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    if (g.degree(a) != g.degree(b))
      return descending ? g.degree(a) > g.degree(b) : g.degree(a) < g.degree(b);
    return a < b;
  });
  return nodes;
}

int log2_floor(std::size_t k) {
  if (k == 0) return 0;
  return static_cast<int>(std::floor(std::log2(static_cast<double>(k))));
}

}  // namespace

AnchorSet select_anchors(const Graph& ga, const Partition& pa, const Graph& gb,
                         const Partition& pb,
                         const std::vector<std::pair<int, int>>& aligned_pairs) {
  AnchorSet set;
  for (const auto& [ca, cb] : aligned_pairs) {
    const auto& ma = pa.communities.at(ca);
    const auto& mb = pb.communities.at(cb);
    const int k = std::min(log2_floor(ma.size()), log2_floor(mb.size()));
    if (k < 1) continue;
    const auto ra = ranked(ga, ma, true);
    const auto rb = ranked(gb, mb, true);
    for (int i = 0; i < k; ++i) {
      const NodeId u = ra[i], v = rb[i];
      set.anchors.emplace_back(u, v);
      const auto nu = ga.neighbors(u);
      const auto nv = gb.neighbors(v);
      const int ks = std::min(log2_floor(nu.size()), log2_floor(nv.size()));
      std::pair<std::vector<NodeId>, std::vector<NodeId>> group;
      if (ks >= 1) {
        auto su = ranked(ga, {nu.begin(), nu.end()}, false);
        auto sv = ranked(gb, {nv.begin(), nv.end()}, false);
        su.resize(ks);
        sv.resize(ks);
        group = {std::move(su), std::move(sv)};
      }
      set.small_groups.push_back(std::move(group));
    }
  }
  return set;
}

namespace {

using Row = Eigen::RowVectorXd;

struct Grads {
  Matrix w_ab, w_ba;
  Row b_ab, b_ba;
};

// One directional term c * MSE(x W + b, y); accumulates into gw/gb when
// they are non-null.
double mapped_term(const Row& x, const Row& y, const Matrix& w, const Row& b, double c,
                   Matrix* gw, Row* gb) {
  const int d = static_cast<int>(x.size());
  const Row r = x * w + b - y;
  if (gw) {
    const Row scaled = (2.0 * c / d) * r;
    *gw += x.transpose() * scaled;
    *gb += scaled;
  }
  return c * r.squaredNorm() / d;
}

// c * MSE of a round trip through both maps back to the start point.
double round_trip_term(const Row& x, const Matrix& w1, const Row& b1, const Matrix& w2,
                       const Row& b2, double c, Matrix* gw1, Row* gb1, Matrix* gw2, Row* gb2) {
  const int d = static_cast<int>(x.size());
  const Row h = x * w1 + b1;
  const Row r = h * w2 + b2 - x;
  if (gw1) {
    const Row scaled = (2.0 * c / d) * r;
    *gw2 += h.transpose() * scaled;
    *gb2 += scaled;
    const Row dh = scaled * w2.transpose();
    *gw1 += x.transpose() * dh;
    *gb1 += dh;
  }
  return c * r.squaredNorm() / d;
}

AlignmentLosses objective(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                          const AlignmentModel& m, Grads* g) {
  Matrix* gwab = g ? &g->w_ab : nullptr;
  Matrix* gwba = g ? &g->w_ba : nullptr;
  Row* gbab = g ? &g->b_ab : nullptr;
  Row* gbba = g ? &g->b_ba : nullptr;

  AlignmentLosses loss;
  for (std::size_t i = 0; i < set.anchors.size(); ++i) {
    const auto [u, v] = set.anchors[i];
    loss.large += mapped_term(za.row(u), zb.row(v), m.w_ab, m.b_ab, 1.0, gwab, gbab);
    loss.large += mapped_term(zb.row(v), za.row(u), m.w_ba, m.b_ba, 1.0, gwba, gbba);

    const auto& [su, sv] = set.small_groups[i];
    if (su.empty()) continue;
    const double c = 1.0 / su.size();
    for (NodeId x : su)
      for (NodeId y : sv) {
        loss.small += mapped_term(za.row(x), zb.row(y), m.w_ab, m.b_ab, c, gwab, gbab);
        loss.small += mapped_term(zb.row(y), za.row(x), m.w_ba, m.b_ba, c, gwba, gbba);
      }
  }

  const double c_us = 1.0 / static_cast<double>(za.rows() + zb.rows());
  for (int u = 0; u < za.rows(); ++u)
    loss.us += round_trip_term(za.row(u), m.w_ab, m.b_ab, m.w_ba, m.b_ba, c_us, gwab, gbab,
                               gwba, gbba);
  for (int v = 0; v < zb.rows(); ++v)
    loss.us += round_trip_term(zb.row(v), m.w_ba, m.b_ba, m.w_ab, m.b_ab, c_us, gwba, gbba,
                               gwab, gbab);
  return loss;
}

}  // namespace

AlignmentLosses alignment_losses(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                                 const AlignmentModel& model) {
  return objective(za, zb, set, model, nullptr);
}

double alignment_loss(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                      const AlignmentModel& model) {
  return objective(za, zb, set, model, nullptr).total();
}

AlignmentGradients alignment_gradients(const Matrix& za, const Matrix& zb,
                                       const AnchorSet& set, const AlignmentModel& model) {
  const int d = static_cast<int>(za.cols());
  Grads g{Matrix::Zero(d, d), Matrix::Zero(d, d), Row::Zero(d), Row::Zero(d)};
  AlignmentGradients out;
  out.losses = objective(za, zb, set, model, &g);
  out.w_ab = std::move(g.w_ab);
  out.w_ba = std::move(g.w_ba);
  out.b_ab = std::move(g.b_ab);
  out.b_ba = std::move(g.b_ba);
  return out;
}

AlignmentResult train_alignment(const Matrix& za, const Matrix& zb, const AnchorSet& set,
                                const AlignmentConfig& cfg) {
  if (za.cols() != zb.cols()) throw std::invalid_argument("embedding dimensions differ");
  const int d = static_cast<int>(za.cols());

  AlignmentResult out;
  out.model.w_ab = Matrix::Identity(d, d);
  out.model.w_ba = Matrix::Identity(d, d);
  out.model.b_ab = Row::Zero(d);
  out.model.b_ba = Row::Zero(d);

  out.loss_history.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Grads g{Matrix::Zero(d, d), Matrix::Zero(d, d), Row::Zero(d), Row::Zero(d)};
    const double loss = objective(za, zb, set, out.model, &g).total();
    if (!std::isfinite(loss)) throw std::runtime_error("alignment training diverged");
    out.loss_history.push_back(loss);
    out.model.w_ab -= cfg.lr * g.w_ab;
    out.model.w_ba -= cfg.lr * g.w_ba;
    out.model.b_ab -= cfg.lr * g.b_ab;
    out.model.b_ba -= cfg.lr * g.b_ba;
  }
  if (!out.loss_history.empty() && out.loss_history.back() > out.loss_history.front())
    throw std::runtime_error("alignment training diverged");
  return out;
}

std::vector<NodeId> node_mapping(const Matrix& za, const Matrix& zb,
                                 const AlignmentModel& model) {
  std::vector<NodeId> map(za.rows());
  const Matrix mapped = (za * model.w_ab).rowwise() + model.b_ab;
  for (int u = 0; u < za.rows(); ++u) {
    double best = std::numeric_limits<double>::infinity();
    NodeId arg = 0;
    for (int v = 0; v < zb.rows(); ++v) {
      const double dist = (zb.row(v) - mapped.row(u)).squaredNorm();
      if (dist < best) {
        best = dist;
        arg = v;
      }
    }
    map[u] = arg;
  }
  return map;
}

}  // namespace mdeo
