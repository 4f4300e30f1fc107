#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mdeo/community.hpp"
#include "mdeo/metrics.hpp"
#include "mdeo/synth.hpp"

using namespace mdeo;

TEST_CASE("planted partitions assign blocks round-robin") {
  const PlantedPartition pp = planted_partition(10, 3, 0.5, 0.1, 1);
  CHECK(pp.graph.node_count() == 10);
  CHECK(pp.truth.community_count() == 3);
  for (int v = 0; v < 10; ++v) CHECK(pp.truth.assignment[v] == v % 3);
}

TEST_CASE("extreme probabilities give cliques and empty cuts") {
  const PlantedPartition pp = planted_partition(12, 3, 1.0, 0.0, 5);
  // within-block pairs all present, cross-block pairs all absent
  for (int u = 0; u < 12; ++u)
    for (int v = u + 1; v < 12; ++v) {
      if (u % 3 == v % 3)
        CHECK(pp.graph.has_edge(u, v));
      else
        CHECK_FALSE(pp.graph.has_edge(u, v));
    }
  const PlantedPartition empty = planted_partition(8, 2, 0.0, 0.0, 5);
  CHECK(empty.graph.edge_count() == 0);
}

TEST_CASE("generation is deterministic per seed") {
  const PlantedPartition a = planted_partition(30, 4, 0.3, 0.05, 9);
  const PlantedPartition b = planted_partition(30, 4, 0.3, 0.05, 9);
  const PlantedPartition c = planted_partition(30, 4, 0.3, 0.05, 10);
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(a.graph.edges() != c.graph.edges());
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(planted_partition(5, 0, 0.5, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(planted_partition(5, 6, 0.5, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(planted_partition(5, 2, 1.5, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(planted_partition(5, 2, 0.5, -0.1, 1), std::invalid_argument);
}

TEST_CASE("strong planted structure is recoverable by detection") {
  const PlantedPartition pp = planted_partition(60, 3, 0.5, 0.01, 33);
  const Partition detected = detect_greedy_modularity(pp.graph);
  CHECK(nmi(detected, pp.truth) > 0.8);
}
