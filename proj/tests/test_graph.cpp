#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "mdeo/graph.hpp"
#include "oracles.hpp"

using namespace mdeo;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("construction normalizes and sorts edges") {
  Graph g(4, {{2, 1}, {0, 3}, {1, 0}});
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK(g.has_edge(0, 3));
  CHECK_FALSE(g.has_edge(0, 2));
  for (NodeId v = 0; v < 4; ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
  }
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(3) == 1);
  CHECK(g.max_degree() == 2);
}

TEST_CASE("construction rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{-1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);  // duplicate
}

TEST_CASE("weights default to 1 and are queryable") {
  Graph g(3, {{0, 1}, {1, 2}}, {2.5, 0.5});
  CHECK(g.weighted());
  CHECK(g.weight(1, 0) == doctest::Approx(2.5));
  CHECK(g.weight(2, 1) == doctest::Approx(0.5));
  CHECK(g.weight(0, 2) == 0.0);
  CHECK(g.weighted_degree(1) == doctest::Approx(3.0));
  CHECK(g.max_weighted_degree() == doctest::Approx(3.0));

  Graph plain(3, {{0, 1}, {1, 2}});
  CHECK_FALSE(plain.weighted());
  CHECK(plain.weighted_degree(1) == doctest::Approx(2.0));
}

TEST_CASE("edge list loading interns labels in first-appearance order") {
  const auto path = write_temp("mdeo_edges_ok.txt", "# comment\nalpha beta\n\nbeta gamma\ngamma alpha\n");
  const LoadResult r = load_edge_list(path);
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 3);
  CHECK(r.labels == std::vector<std::string>{"alpha", "beta", "gamma"});
  CHECK(r.label_to_id.at("gamma") == 2);
  CHECK(r.dropped_self_loops == 0);
  CHECK(r.dropped_duplicates == 0);
  std::filesystem::remove(path);
}

TEST_CASE("edge list loading drops self-loops and duplicates with counts") {
  const auto path = write_temp("mdeo_edges_dup.txt", "a b\nb a\na a\nb c\n");
  const LoadResult r = load_edge_list(path);
  CHECK(r.graph.edge_count() == 2);
  CHECK(r.dropped_duplicates == 1);
  CHECK(r.dropped_self_loops == 1);
  std::filesystem::remove(path);
}

TEST_CASE("edge list loading rejects malformed lines and missing files") {
  const auto path = write_temp("mdeo_edges_bad.txt", "a b\nx y z\n");
  CHECK_THROWS_WITH_AS(load_edge_list(path), doctest::Contains("line 2"), std::runtime_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/nowhere.edges"), std::runtime_error);
}

TEST_CASE("apply_edits adds and removes exactly the listed pairs") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  const Graph h = apply_edits(g, {{{0, 3}}, {{1, 2}}});
  CHECK(h.edge_count() == 3);
  CHECK(h.has_edge(0, 3));
  CHECK_FALSE(h.has_edge(1, 2));
  CHECK(g.has_edge(1, 2));  // the base graph is untouched

  CHECK_THROWS_AS(apply_edits(g, {{{0, 1}}, {}}), std::invalid_argument);  // already present
  CHECK_THROWS_AS(apply_edits(g, {{}, {{0, 2}}}), std::invalid_argument);  // absent
}

TEST_CASE("apply_edits with empty edit set is the identity") {
  Graph g(5, {{0, 1}, {2, 3}});
  const Graph h = apply_edits(g, {});
  CHECK(h.edge_count() == g.edge_count());
  CHECK(h.edges() == g.edges());
}

TEST_CASE("motif graph of K4 weights every edge 2") {
  EdgeList edges;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) edges.push_back({u, v});
  const Graph m = motif_weighted_graph(Graph(4, edges));
  CHECK(m.edge_count() == 6);
  for (const auto& [u, v] : m.edges()) CHECK(m.weight(u, v) == doctest::Approx(2.0));
}

TEST_CASE("motif graph drops triangle-free edges") {
  // a 4-cycle has no triangles at all
  const Graph m = motif_weighted_graph(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  CHECK(m.edge_count() == 0);
  CHECK(m.node_count() == 4);
}

TEST_CASE("motif weights match the common-neighbor brute force") {
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    const Graph g = oracle::random_graph(14, 0.3, 1000 + seed);
    const Graph m = motif_weighted_graph(g);
    for (const auto& [u, v] : g.edges()) {
      const int tri = oracle::common_neighbors(g, u, v);
      if (tri == 0)
        CHECK_FALSE(m.has_edge(u, v));
      else
        CHECK(m.weight(u, v) == doctest::Approx(tri));
    }
    // no edges invented
    for (const auto& [u, v] : m.edges()) CHECK(g.has_edge(u, v));
  }
}
