#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recomp/graph.hpp"
#include "recomp/rng.hpp"

namespace recomp {

enum class TreeMethod {
    /// Minimum spanning tree under i.i.d. uniform edge weights.
    RandomWeightMst,
    /// Uniform spanning tree via Wilson's loop-erased random walks.
    Wilson,
};

/// Spanning tree over a node subset, rooted at nodes[0]. All per-node arrays
/// are indexed by local position in `nodes`.
struct SpanningTree {
    std::vector<NodeIndex> nodes;
    std::vector<int> parent;                  // -1 at the root
    std::vector<int> order;                   // root first; parents precede children
    std::vector<std::int64_t> subtree_population;
    std::int64_t total_population = 0;

    std::size_t size() const { return nodes.size(); }
    /// Local indices of the subtree hanging below `child`.
    std::vector<int> subtree(int child) const;
};

/// Throws DataError when the induced subgraph on `subset` is disconnected.
SpanningTree random_spanning_tree(const DualGraph& g, std::span<const NodeIndex> subset, Rng& rng,
                                  TreeMethod method = TreeMethod::RandomWeightMst);

/// Tree edge (child, parent[child]) chosen for removal. `child_side_districts`
/// is how many districts the subtree below `child` is meant to hold.
struct TreeCut {
    int child = -1;
    int child_side_districts = 1;
};

/// Uniform choice among tree edges whose removal leaves both sides within
/// epsilon * ideal of their targets (ideal times their district counts).
/// With districts_a != districts_b either orientation of an edge may qualify.
std::optional<TreeCut> find_cut(const SpanningTree& tree, double ideal, double epsilon,
                                int districts_a, int districts_b, Rng& rng);

/// Two-district case: both components within epsilon * ideal of ideal.
std::optional<TreeCut> find_balanced_cut(const SpanningTree& tree, double ideal, double epsilon,
                                         Rng& rng);

}  // namespace recomp
