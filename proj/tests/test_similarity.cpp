#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>

#include "doctest.h"
#include "mdeo/similarity.hpp"
#include "oracles.hpp"

using namespace mdeo;

namespace {

Graph star(int leaves) {
  EdgeList edges;
  for (int v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, edges);
}

std::vector<double> bins_of(const DegreeHistogram& h) {
  return {h.bins.begin(), h.bins.end()};
}

Graph relabeled(const Graph& g, const std::vector<NodeId>& perm) {
  EdgeList edges;
  for (const auto& [u, v] : g.edges()) edges.push_back(make_edge(perm[u], perm[v]));
  return Graph(g.node_count(), edges);
}

}  // namespace

TEST_CASE("histogram of a 4-leaf star is hand-countable") {
  const Graph g = star(4);
  std::vector<NodeId> all(5);
  std::iota(all.begin(), all.end(), 0);
  const DegreeHistogram h = degree_interval_histogram(all, g);
  // leaves have degree 1/4 -> bin 1; the hub has 4/4 = 1.0, clamped to bin 4
  CHECK(h.bins[0] == doctest::Approx(0.0));
  CHECK(h.bins[1] == doctest::Approx(0.8));
  CHECK(h.bins[2] == doctest::Approx(0.0));
  CHECK(h.bins[3] == doctest::Approx(0.0));
  CHECK(h.bins[4] == doctest::Approx(0.2));
  CHECK(h.community_size == 5);
}

TEST_CASE("histogram bins always sum to 1") {
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const Graph g = oracle::random_graph(20, 0.2, 5000 + seed);
    const std::vector<int> a = oracle::random_assignment(20, 4, 5100 + seed);
    const Partition p = Partition::from_assignment(a);
    for (const auto& c : p.communities) {
      const DegreeHistogram h = degree_interval_histogram(c, g);
      double sum = 0;
      for (double b : h.bins) sum += b;
      CHECK(sum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("zero max degree puts everything in the lowest bin") {
  const Graph g(3, {});
  std::vector<NodeId> all{0, 1, 2};
  const DegreeHistogram h = degree_interval_histogram(all, g);
  CHECK(h.bins[0] == doctest::Approx(1.0));
}

TEST_CASE("histogram uses weighted degrees on weighted graphs") {
  // weights 1 and 4 -> normalized weighted degrees 0.2 (bin 1) and 1 (bin 4)
  const Graph g(3, {{0, 1}, {1, 2}}, {1.0, 4.0});
  std::vector<NodeId> all{0, 1, 2};
  const DegreeHistogram h = degree_interval_histogram(all, g);
  CHECK(h.bins[1] == doctest::Approx(1.0 / 3));  // node 0, 1/5
  // node 1 (5/5) clamps into the last bin; node 2's 4/5 lands there too
  // because 0.8/0.2 evaluates to 4 exactly in binary floating point
  CHECK(h.bins[4] == doctest::Approx(2.0 / 3));
}

TEST_CASE("symmetric KL agrees with the scripted oracle") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    DegreeHistogram a, b;
    double sa = 0, sb = 0;
    for (int i = 0; i < 5; ++i) {
      a.bins[i] = u(rng);
      b.bins[i] = u(rng);
      sa += a.bins[i];
      sb += b.bins[i];
    }
    for (int i = 0; i < 5; ++i) {
      a.bins[i] /= sa;
      b.bins[i] /= sb;
    }
    const double expected = oracle::symmetric_kl(bins_of(a), bins_of(b));
    CHECK(symmetric_kl(a, b) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(symmetric_kl(b, a) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("KL of a histogram with itself is zero and Diff scales by size ratio") {
  DegreeHistogram a;
  a.bins = {0.2, 0.2, 0.2, 0.2, 0.2};
  a.community_size = 3;
  DegreeHistogram b = a;
  b.community_size = 12;
  CHECK(symmetric_kl(a, a) == doctest::Approx(0.0));
  CHECK(community_diff(a, b) == doctest::Approx(0.0));

  DegreeHistogram c;
  c.bins = {1.0, 0.0, 0.0, 0.0, 0.0};
  c.community_size = 12;
  const double kl = symmetric_kl(a, c);
  CHECK(kl > 0);
  CHECK(community_diff(a, c) == doctest::Approx(4.0 * kl));
  CHECK(community_diff(c, a) == doctest::Approx(4.0 * kl));
}

TEST_CASE("community similarity lands in (0, 2] and peaks at identical inputs") {
  const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const Graph m = motif_weighted_graph(g);
  std::vector<NodeId> ca{0, 1, 2}, cb{3, 4, 5};
  const double s = community_similarity(ca, cb, g, g, m, m);
  CHECK(s == doctest::Approx(2.0));  // isomorphic triangles
  for (std::uint32_t seed = 0; seed < 6; ++seed) {
    const Graph ga = oracle::random_graph(10, 0.3, 6000 + seed);
    const Graph gb = oracle::random_graph(14, 0.2, 6100 + seed);
    std::vector<NodeId> xa{0, 1, 2, 3}, xb{0, 1, 2, 3, 4, 5};
    const double v = community_similarity(xa, xb, ga, gb, motif_weighted_graph(ga),
                                          motif_weighted_graph(gb));
    CHECK(v > 0.0);
    CHECK(v <= 2.0 + 1e-12);
  }
}

TEST_CASE("greedy alignment matches the independent oracle exactly") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int r = 1 + trial % 5, c = 1 + (trial * 3) % 6;
    Matrix s(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) s(i, j) = u(rng);
    const AlignedCommunities got = align_communities(s);
    CHECK(got.pairs == oracle::greedy_match(s));
    CHECK(got.pairs.size() == static_cast<std::size_t>(std::min(r, c)));
    for (std::size_t i = 0; i < got.pairs.size(); ++i)
      CHECK(got.values[i] == doctest::Approx(s(got.pairs[i].first, got.pairs[i].second)));
  }
}

TEST_CASE("alignment ties break toward the smallest row then column") {
  Matrix s = Matrix::Ones(2, 2);
  const AlignedCommunities got = align_communities(s);
  REQUIRE(got.pairs.size() == 2);
  CHECK(got.pairs[0] == std::pair<int, int>{0, 0});
  CHECK(got.pairs[1] == std::pair<int, int>{1, 1});
}

TEST_CASE("a graph scores similarity 1 against itself and its relabelings") {
  const Graph g = oracle::random_graph(18, 0.25, 42);
  CHECK(graph_similarity(g, g) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<NodeId> perm(18);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(43);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Graph h = relabeled(g, perm);

  // the degree statistics themselves are label-invariant: feeding both sides
  // the same partition (under the permutation) must give exactly 1
  const NetworkProfile pg = NetworkProfile::build(g);
  std::vector<int> moved(18);
  for (NodeId v = 0; v < 18; ++v) moved[perm[v]] = pg.partition.assignment[v];
  const NetworkProfile ph = NetworkProfile::build(h, Partition::from_assignment(moved));
  CHECK(graph_similarity(pg, ph) == doctest::Approx(1.0).epsilon(1e-9));

  // end to end (detection included) on a graph whose community structure is
  // unambiguous, so the detected partitions correspond under the permutation
  EdgeList edges;
  for (NodeId u = 0; u < 5; ++u)
    for (NodeId v = u + 1; v < 5; ++v) edges.push_back({u, v});
  for (NodeId u = 5; u < 12; ++u)
    for (NodeId v = u + 1; v < 12; ++v) edges.push_back({u, v});
  edges.push_back({4, 5});
  const Graph cliques(12, edges);
  std::vector<NodeId> cperm(12);
  std::iota(cperm.begin(), cperm.end(), 0);
  std::shuffle(cperm.begin(), cperm.end(), rng);
  CHECK(graph_similarity(cliques, relabeled(cliques, cperm)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pairwise similarity is symmetric with unit diagonal") {
  std::vector<NetworkProfile> profiles;
  for (std::uint32_t seed = 0; seed < 4; ++seed)
    profiles.push_back(NetworkProfile::build(oracle::random_graph(12 + 3 * seed, 0.25, 7000 + seed)));
  const Matrix s = pairwise_similarity_matrix(profiles);
  for (int i = 0; i < 4; ++i) {
    CHECK(s(i, i) == doctest::Approx(1.0).epsilon(1e-9));
    for (int j = 0; j < 4; ++j) {
      CHECK(s(i, j) == doctest::Approx(s(j, i)).epsilon(1e-9));
      CHECK(s(i, j) > 0.0);
      CHECK(s(i, j) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("assisted sets have round(sqrt(n)) members and rows normalize to 1") {
  auto check_for = [](int count, int expected_assisted) {
    Matrix pw = Matrix::Constant(count, count, 0.4);
    std::mt19937 rng(1234 + count);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j) pw(i, j) = pw(j, i) = u(rng);
    pw.diagonal().setOnes();
    const SimilarityState st = init_similarity_and_assisted(pw);
    for (int i = 0; i < count; ++i) {
      CHECK(static_cast<int>(st.assisted[i].size()) == expected_assisted);
      double row = 0;
      for (int j = 0; j < count; ++j) {
        row += st.values(i, j);
        const bool in_assisted =
            std::find(st.assisted[i].begin(), st.assisted[i].end(), j) != st.assisted[i].end();
        if (!in_assisted) CHECK(st.values(i, j) == 0.0);
        if (i == j) CHECK(st.values(i, j) == 0.0);  // self never assists
      }
      CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
      // assisted = the top-similarity peers
      for (int j : st.assisted[i])
        for (int k = 0; k < count; ++k) {
          if (k == i) continue;
          const bool k_in =
              std::find(st.assisted[i].begin(), st.assisted[i].end(), k) != st.assisted[i].end();
          if (!k_in) CHECK(pw(i, j) >= pw(i, k) - 1e-12);
        }
    }
  };
  check_for(2, 1);   // round(sqrt(2)) = 1
  check_for(4, 2);   // round(2) = 2
  check_for(6, 2);   // round(2.449) = 2
  check_for(7, 3);   // round(2.646) = 3
  check_for(9, 3);   // round(3) = 3
}

TEST_CASE("assisted override widens or narrows the set within bounds") {
  Matrix pw = Matrix::Constant(5, 5, 0.5);
  pw.diagonal().setOnes();
  CHECK(init_similarity_and_assisted(pw, 1).assisted[0].size() == 1);
  CHECK(init_similarity_and_assisted(pw, 4).assisted[0].size() == 4);
  CHECK(init_similarity_and_assisted(pw, 40).assisted[0].size() == 4);  // capped at n-1
}
