#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "votenet/discipline.hpp"
#include "votenet/graph.hpp"

namespace votenet {

// Community assignment over a graph's nodes. `members[i]` is the id of node i
// and `community[i]` its dense community id in 0..k-1.
struct Partition {
  std::vector<std::string> members;
  std::vector<std::uint32_t> community;
  double modularity = 0.0;
  std::size_t community_count = 0;

  std::vector<std::size_t> community_sizes() const;
};

// Weighted Newman-Girvan modularity (resolution 1):
//   Q = 1/(2W) * sum_ij [A_ij - k_i k_j / (2W)] delta(c_i, c_j)
double modularity_score(const SimilarityGraph& g, std::span<const std::uint32_t> community);

// Same, with the assignment looked up by member id; throws
// std::invalid_argument when a node of `g` is not assigned.
double modularity_score(const SimilarityGraph& g, const Partition& p);

struct LouvainOptions {
  // Minimum modularity gain for a move to count as an improvement.
  double min_gain = 1e-12;
};

// Two-phase Louvain (local moves, then aggregation) with a seed-determined
// node visit order. Communities are relabeled by descending size.
Partition louvain(const SimilarityGraph& g, std::uint64_t seed, const LouvainOptions& options = {});

// Runs seeds seed..seed+restarts-1 concurrently and keeps the highest
// modularity, preferring the smaller seed on ties.
Partition louvain_best_of(const SimilarityGraph& g, std::uint64_t seed, unsigned restarts,
                          const LouvainOptions& options = {});

GroupAssignment community_assignment(const Partition& p);

// Reorders/validates a partition so that it lines up with `g`'s nodes and
// recomputes its modularity.
Partition align_partition(const SimilarityGraph& g, const Partition& p);

}  // namespace votenet
