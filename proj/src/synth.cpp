#include "mdeo/synth.hpp"

#include <stdexcept>

#include "mdeo/rng.hpp"

namespace mdeo {

PlantedPartition planted_partition(int n, int blocks, double p_in, double p_out,
                                   std::uint64_t seed) {
  if (n < 1 || blocks < 1 || blocks > n)
    throw std::invalid_argument("need 1 <= blocks <= n");
  if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
    throw std::invalid_argument("probabilities must lie in [0,1]");

  std::vector<int> block(n);
  for (int v = 0; v < n; ++v) block[v] = v % blocks;

  Rng rng(seed);
  EdgeList edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.uniform01() < (block[u] == block[v] ? p_in : p_out)) edges.emplace_back(u, v);

  return {Graph(n, edges), Partition::from_assignment(block)};
}

}  // namespace mdeo
