#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mdeo/graph.hpp"

namespace mdeo {

// Every node in exactly one community, community ids contiguous from 0.
struct Partition {
  std::vector<int> assignment;                 // node id -> community id
  std::vector<std::vector<NodeId>> communities;  // sorted member lists

  int community_count() const { return static_cast<int>(communities.size()); }

  // Relabels an arbitrary assignment to contiguous ids in order of first
  // appearance over node ids.
  static Partition from_assignment(const std::vector<int>& raw);
};

// Attacker interface. Only the greedy-modularity attacker ships; WalkTrap or
// others can be plugged in behind this.
class CommunityDetector {
 public:
  virtual ~CommunityDetector() = default;
  virtual Partition detect(const Graph& g) const = 0;
  virtual std::string name() const = 0;
};

// Deterministic CNM-style agglomeration: start from singletons, repeatedly
// merge the connected pair with the largest modularity gain, stop when no
// merge improves Q. Ties broken by the smallest (community id, community id)
// pair, where a community's id is the smallest node id it contains.
Partition detect_greedy_modularity(const Graph& g);

class GreedyModularityDetector final : public CommunityDetector {
 public:
  Partition detect(const Graph& g) const override { return detect_greedy_modularity(g); }
  std::string name() const override { return "greedy-modularity"; }
};

// Newman modularity Q = sum_c [ e_c/m - (d_c/2m)^2 ].
double modularity(const Graph& g, const Partition& p);

}  // namespace mdeo
