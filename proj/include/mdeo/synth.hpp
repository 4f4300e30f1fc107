#pragma once

#include <cstdint>

#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"

namespace mdeo {

struct PlantedPartition {
  Graph graph;
  Partition truth;
};

// Planted-partition random graph: n nodes in `blocks` near-equal groups,
// each pair linked with p_in inside a group and p_out across groups.
PlantedPartition planted_partition(int n, int blocks, double p_in, double p_out,
                                   std::uint64_t seed);

}  // namespace mdeo
