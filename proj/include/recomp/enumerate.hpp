#pragma once

#include <cstdint>
#include <vector>

#include "recomp/graph.hpp"

namespace recomp {

struct EnumerationBudget {
    std::size_t max_nodes = 20;
    std::size_t max_partitions = 1'000'000;
};

/// Every contiguous, non-empty k-partition whose districts all lie within
/// epsilon * ideal of ideal, each listed once up to relabeling. District 0
/// holds node 0, district 1 the lowest node outside district 0, and so on.
/// Throws InfeasibleError when the graph or the result exceeds the budget
/// (hard limit 64 nodes).
std::vector<Partition> enumerate_partitions(const DualGraph& g, const VotePattern& v, int k,
                                            double epsilon, EnumerationBudget budget = {});
std::vector<Partition> enumerate_partitions(const DualGraph& g, int k, double epsilon,
                                            EnumerationBudget budget = {});

/// Sorted list of sorted district node lists; equal for relabelings.
using PlanKey = std::vector<std::vector<NodeIndex>>;
PlanKey canonical_key(const Partition& p);

}  // namespace recomp
