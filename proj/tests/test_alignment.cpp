#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>

#include "doctest.h"
#include "mdeo/alignment.hpp"
#include "mdeo/embedding.hpp"
#include "oracles.hpp"

using namespace mdeo;

namespace {

Matrix random_embedding(int n, int d, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Matrix::NullaryExpr(n, d, [&] { return u(rng); });
}

AlignmentModel identity_model(int d) {
  AlignmentModel m;
  m.w_ab = Matrix::Identity(d, d);
  m.w_ba = Matrix::Identity(d, d);
  m.b_ab = Eigen::RowVectorXd::Zero(d);
  m.b_ba = Eigen::RowVectorXd::Zero(d);
  return m;
}

AlignmentModel random_alignment_model(int d, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  AlignmentModel m;
  m.w_ab = Matrix::NullaryExpr(d, d, [&] { return u(rng); });
  m.w_ba = Matrix::NullaryExpr(d, d, [&] { return u(rng); });
  m.b_ab = Eigen::RowVectorXd::NullaryExpr(d, [&] { return u(rng); });
  m.b_ba = Eigen::RowVectorXd::NullaryExpr(d, [&] { return u(rng); });
  return m;
}

AnchorSet random_anchor_set(int na, int nb, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  AnchorSet set;
  for (int i = 0; i < count; ++i) {
    const NodeId u = std::uniform_int_distribution<int>(0, na - 1)(rng);
    const NodeId v = std::uniform_int_distribution<int>(0, nb - 1)(rng);
    set.anchors.emplace_back(u, v);
    std::vector<NodeId> su, sv;
    const int k = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int j = 0; j < k; ++j) {
      su.push_back(std::uniform_int_distribution<int>(0, na - 1)(rng));
      sv.push_back(std::uniform_int_distribution<int>(0, nb - 1)(rng));
    }
    set.small_groups.emplace_back(su, sv);
  }
  return set;
}

// Gradient of the total loss by central differences over a whole block.
template <typename Block>
Matrix numeric_grad(const Matrix& za, const Matrix& zb, const AnchorSet& set, AlignmentModel m,
                    Block&& block) {
  const double h = 1e-5;
  auto& w = block(m);
  Matrix grad(w.rows(), w.cols());
  for (int r = 0; r < w.rows(); ++r)
    for (int c = 0; c < w.cols(); ++c) {
      const double keep = w(r, c);
      w(r, c) = keep + h;
      const double up = alignment_loss(za, zb, set, m);
      w(r, c) = keep - h;
      const double down = alignment_loss(za, zb, set, m);
      w(r, c) = keep;
      grad(r, c) = (up - down) / (2 * h);
    }
  return grad;
}

double frobenius_rel_err(const Matrix& analytic, const Matrix& numeric) {
  return (analytic - numeric).norm() / std::max({analytic.norm(), numeric.norm(), 1e-12});
}

// Two separated cliques with distinct hub degrees, so degree ranks are
// unambiguous under relabeling.
Graph two_blobs() {
  EdgeList edges;
  auto clique = [&](std::vector<int> nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j)
        edges.push_back(make_edge(nodes[i], nodes[j]));
  };
  clique({0, 1, 2, 3, 4});
  clique({5, 6, 7, 8});
  edges.push_back({4, 5});
  edges.push_back({3, 5});
  edges.push_back({0, 9});  // pendant to break degree ties
  return Graph(10, edges);
}

}  // namespace

TEST_CASE("anchor counts follow floor(log2) of the smaller community") {
  // community A: 16 nodes in a chain-of-cliques, community B: 64-node blob is
  // overkill to build; sizes matter, not structure, so use stars.
  EdgeList ea, eb;
  for (int v = 1; v < 16; ++v) ea.push_back({0, v});
  for (int v = 1; v < 64; ++v) eb.push_back({0, v});
  const Graph ga(16, ea), gb(64, eb);
  std::vector<int> aa(16, 0), ab(64, 0);
  const Partition pa = Partition::from_assignment(aa);
  const Partition pb = Partition::from_assignment(ab);
  const AnchorSet set = select_anchors(ga, pa, gb, pb, {{0, 0}});
  CHECK(set.anchors.size() == 4);  // floor(min(log2 16, log2 64)) = 4
  CHECK(set.small_groups.size() == set.anchors.size());
  // top-degree anchor pair is hub-to-hub
  CHECK(set.anchors[0] == std::pair<NodeId, NodeId>{0, 0});
}

TEST_CASE("anchors rank by degree with id tie-breaks") {
  // degrees: node0=3, node1=2, node2=2, node3=1 in both copies
  const Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  const Partition p = Partition::from_assignment({0, 0, 0, 0});
  const AnchorSet set = select_anchors(g, p, g, p, {{0, 0}});
  REQUIRE(set.anchors.size() == 2);  // floor(log2 4) = 2
  CHECK(set.anchors[0] == std::pair<NodeId, NodeId>{0, 0});
  CHECK(set.anchors[1] == std::pair<NodeId, NodeId>{1, 1});  // tie 1 vs 2 -> 1
}

TEST_CASE("single-node communities yield no anchors") {
  const Graph g(2, {{0, 1}});
  const Partition p = Partition::from_assignment({0, 1});
  const AnchorSet set = select_anchors(g, p, g, p, {{0, 0}, {1, 1}});
  CHECK(set.anchors.empty());
}

TEST_CASE("small groups take the least-connected neighbors, equally sized") {
  const Graph g = two_blobs();
  const Partition p = Partition::from_assignment(std::vector<int>(10, 0));
  const AnchorSet set = select_anchors(g, p, g, p, {{0, 0}});
  REQUIRE_FALSE(set.anchors.empty());
  for (std::size_t i = 0; i < set.anchors.size(); ++i) {
    const auto& [su, sv] = set.small_groups[i];
    CHECK(su.size() == sv.size());
    const auto [u, v] = set.anchors[i];
    for (NodeId x : su) CHECK(g.has_edge(u, x));
    for (NodeId y : sv) CHECK(g.has_edge(v, y));
    // k_s = floor(min(log2 deg(u), log2 deg(v)))
    const int ks = static_cast<int>(std::floor(
        std::min(std::log2(double(g.degree(u))), std::log2(double(g.degree(v))))));
    CHECK(static_cast<int>(su.size()) == ks);
  }
}

TEST_CASE("loss components are non-negative and zero at a perfect identity fit") {
  const Matrix z = random_embedding(8, 4, 16000);
  AnchorSet set;
  for (int i = 0; i < 3; ++i) {
    set.anchors.emplace_back(i, i);
    set.small_groups.emplace_back();
  }
  const AlignmentLosses at_identity = alignment_losses(z, z, set, identity_model(4));
  CHECK(at_identity.large == doctest::Approx(0.0));
  CHECK(at_identity.small == doctest::Approx(0.0));
  CHECK(at_identity.us == doctest::Approx(0.0));

  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const Matrix za = random_embedding(6, 4, 16100 + seed);
    const Matrix zb = random_embedding(7, 4, 16200 + seed);
    const AlignmentLosses l = alignment_losses(
        za, zb, random_anchor_set(6, 7, 3, 16300 + seed), random_alignment_model(4, seed));
    CHECK(l.large >= 0.0);
    CHECK(l.small >= 0.0);
    CHECK(l.us >= 0.0);
    CHECK(l.total() == doctest::Approx(l.large + l.small + l.us));
  }
}

TEST_CASE("analytic alignment gradients match central differences") {
  int instances = 0;
  for (std::uint32_t seed = 0; seed < 24; ++seed) {
    const int d = 3 + seed % 3;
    const Matrix za = random_embedding(5 + seed % 3, d, 17000 + seed);
    const Matrix zb = random_embedding(6, d, 17100 + seed);
    const AnchorSet set = random_anchor_set(static_cast<int>(za.rows()), 6, 2, 17200 + seed);
    const AlignmentModel m = random_alignment_model(d, 17300 + seed);
    const AlignmentGradients an = alignment_gradients(za, zb, set, m);

    const Matrix n_wab =
        numeric_grad(za, zb, set, m, [](AlignmentModel& mm) -> Matrix& { return mm.w_ab; });
    const Matrix n_wba =
        numeric_grad(za, zb, set, m, [](AlignmentModel& mm) -> Matrix& { return mm.w_ba; });
    const Matrix n_bab = numeric_grad(
        za, zb, set, m, [](AlignmentModel& mm) -> Eigen::RowVectorXd& { return mm.b_ab; });
    const Matrix n_bba = numeric_grad(
        za, zb, set, m, [](AlignmentModel& mm) -> Eigen::RowVectorXd& { return mm.b_ba; });
    CHECK(frobenius_rel_err(an.w_ab, n_wab) < 1e-4);
    CHECK(frobenius_rel_err(an.w_ba, n_wba) < 1e-4);
    CHECK(frobenius_rel_err(Matrix(an.b_ab), n_bab) < 1e-4);
    CHECK(frobenius_rel_err(Matrix(an.b_ba), n_bba) < 1e-4);
    ++instances;
  }
  CHECK(instances >= 20);
}

TEST_CASE("training from identity keeps anchors close and loss non-increasing") {
  // same embedding on both sides with identity anchors: the optimum is the
  // identity map, so training must stay at (near) zero loss
  const Matrix z = random_embedding(12, 5, 18000);
  AnchorSet set;
  for (int i = 0; i < 4; ++i) {
    set.anchors.emplace_back(i, i);
    set.small_groups.emplace_back();
  }
  const AlignmentResult res = train_alignment(z, z, set, {200, 0.01});
  CHECK(res.loss_history.back() <= res.loss_history.front() + 1e-12);
  for (const auto& [u, v] : set.anchors) {
    const Eigen::RowVectorXd mapped = res.model.map_ab(z.row(u));
    CHECK((mapped - z.row(v)).norm() < 1e-6);
  }

  // nearest-neighbour mapping recovers the identity on >= 90% of anchors
  const std::vector<NodeId> map = node_mapping(z, z, res.model);
  int hits = 0;
  for (const auto& [u, v] : set.anchors) hits += map[u] == v;
  CHECK(hits >= static_cast<int>(0.9 * set.anchors.size()));
}

TEST_CASE("self-alignment maps high-degree anchors to themselves") {
  const Graph g = two_blobs();
  const Partition p = detect_greedy_modularity(g);
  GaeConfig gcfg;
  gcfg.epochs = 80;
  gcfg.hidden = 16;
  gcfg.embed = 8;
  Rng rng(3);
  const Matrix z = train_gae(g, p, gcfg, rng).embedding;

  std::vector<std::pair<int, int>> self_pairs;
  for (int c = 0; c < p.community_count(); ++c) self_pairs.emplace_back(c, c);
  const AnchorSet set = select_anchors(g, p, g, p, self_pairs);
  REQUIRE_FALSE(set.anchors.empty());
  const AlignmentResult res = train_alignment(z, z, set);
  const std::vector<NodeId> map = node_mapping(z, z, res.model);
  int hits = 0;
  for (const auto& [u, v] : set.anchors) hits += map[u] == u && u == v;
  CHECK(hits >= static_cast<int>(std::ceil(0.9 * set.anchors.size())));
}

TEST_CASE("node mapping equals the brute-force nearest-neighbor scan") {
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    const Matrix za = random_embedding(9, 4, 19000 + seed);
    const Matrix zb = random_embedding(11, 4, 19100 + seed);
    const AlignmentModel m = random_alignment_model(4, 19200 + seed);
    Matrix mapped(za.rows(), za.cols());
    for (int i = 0; i < za.rows(); ++i) mapped.row(i) = m.map_ab(za.row(i));
    const auto expected = oracle::nearest_rows(mapped, zb);
    const auto got = node_mapping(za, zb, m);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);
  }
}

TEST_CASE("node mapping ties resolve to the smallest id") {
  Matrix za(1, 2), zb(3, 2);
  za << 0, 0;
  zb << 1, 0, 1, 0, 2, 0;  // rows 0 and 1 equidistant
  CHECK(node_mapping(za, zb, identity_model(2))[0] == 0);
}

TEST_CASE("training rejects mismatched embedding widths") {
  CHECK_THROWS_AS(
      train_alignment(random_embedding(4, 3, 1), random_embedding(4, 5, 2), AnchorSet{}, {}),
      std::invalid_argument);
}
