#include "recomp/spanning_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recomp/error.hpp"

namespace recomp {

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& p = parent[static_cast<std::size_t>(x)];
            p = parent[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        auto ra = rank[static_cast<std::size_t>(a)];
        auto rb = rank[static_cast<std::size_t>(b)];
        if (ra < rb) {
            std::swap(a, b);
        }
        parent[static_cast<std::size_t>(b)] = a;
        if (ra == rb) {
            ++rank[static_cast<std::size_t>(a)];
        }
        return true;
    }
    std::vector<int> parent;
    std::vector<int> rank;
};

struct LocalEdge {
    int a;
    int b;
};

[[noreturn]] void throw_disconnected(const DualGraph& g, std::span<const NodeIndex> subset) {
    throw DataError("node subset containing \"" + g.id(subset.front()) +
                    "\" induces a disconnected subgraph");
}

// Adjacency lists of the induced subgraph, in local indices.
std::vector<std::vector<int>> local_adjacency(const DualGraph& g, std::span<const NodeIndex> subset,
                                              std::vector<LocalEdge>* edges) {
    std::vector<int> local(g.num_nodes(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        local[static_cast<std::size_t>(subset[i])] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> adj(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (const NodeIndex u : g.neighbors(subset[i])) {
            const int j = local[static_cast<std::size_t>(u)];
            if (j >= 0) {
                adj[i].push_back(j);
                if (edges != nullptr && static_cast<int>(i) < j) {
                    edges->push_back({static_cast<int>(i), j});
                }
            }
        }
    }
    return adj;
}

std::vector<std::vector<int>> mst_tree(const DualGraph& g, std::span<const NodeIndex> subset,
                                       Rng& rng) {
    std::vector<LocalEdge> edges;
    local_adjacency(g, subset, &edges);
    std::vector<std::pair<double, std::size_t>> weighted;
    weighted.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        weighted.emplace_back(rng.uniform01(), e);
    }
    std::sort(weighted.begin(), weighted.end());
    DisjointSets sets(subset.size());
    std::vector<std::vector<int>> tree(subset.size());
    std::size_t used = 0;
    for (const auto& [w, e] : weighted) {
        const auto [a, b] = edges[e];
        if (sets.unite(a, b)) {
            tree[static_cast<std::size_t>(a)].push_back(b);
            tree[static_cast<std::size_t>(b)].push_back(a);
            if (++used + 1 == subset.size()) {
                break;
            }
        }
    }
    if (used + 1 != subset.size()) {
        throw_disconnected(g, subset);
    }
    return tree;
}

std::vector<std::vector<int>> wilson_tree(const DualGraph& g, std::span<const NodeIndex> subset,
                                          Rng& rng) {
    const auto adj = local_adjacency(g, subset, nullptr);
    const std::size_t n = subset.size();
    // Reachability check first: a random walk on a disconnected set never ends.
    {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++reached;
            for (const int u : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
            }
        }
        if (reached != n) {
            throw_disconnected(g, subset);
        }
    }
    std::vector<char> in_tree(n, 0);
    std::vector<int> next(n, -1);
    in_tree[0] = 1;
    for (std::size_t start = 0; start < n; ++start) {
        int v = static_cast<int>(start);
        while (!in_tree[static_cast<std::size_t>(v)]) {
            const auto& nb = adj[static_cast<std::size_t>(v)];
            next[static_cast<std::size_t>(v)] = nb[rng.uniform_index(nb.size())];
            v = next[static_cast<std::size_t>(v)];
        }
        v = static_cast<int>(start);
        while (!in_tree[static_cast<std::size_t>(v)]) {
            in_tree[static_cast<std::size_t>(v)] = 1;
            v = next[static_cast<std::size_t>(v)];
        }
    }
    std::vector<std::vector<int>> tree(n);
    for (std::size_t v = 1; v < n; ++v) {
        const int u = next[v];
        tree[v].push_back(u);
        tree[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
    }
    return tree;
}

}  // namespace

std::vector<int> SpanningTree::subtree(int child) const {
    std::vector<char> inside(nodes.size(), 0);
    inside[static_cast<std::size_t>(child)] = 1;
    std::vector<int> out;
    for (const int v : order) {
        const int p = parent[static_cast<std::size_t>(v)];
        if (v == child || (p >= 0 && inside[static_cast<std::size_t>(p)])) {
            inside[static_cast<std::size_t>(v)] = 1;
            out.push_back(v);
        }
    }
    return out;
}

SpanningTree random_spanning_tree(const DualGraph& g, std::span<const NodeIndex> subset, Rng& rng,
                                  TreeMethod method) {
    SpanningTree t;
    if (subset.empty()) {
        throw DataError("spanning tree over an empty node set");
    }
    t.nodes.assign(subset.begin(), subset.end());
    const std::size_t n = subset.size();
    const auto tree = method == TreeMethod::Wilson ? wilson_tree(g, subset, rng)
                                                   : mst_tree(g, subset, rng);

    t.parent.assign(n, -1);
    t.order.reserve(n);
    t.order.push_back(0);
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        const int v = t.order[head];
        for (const int u : tree[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                t.parent[static_cast<std::size_t>(u)] = v;
                t.order.push_back(u);
            }
        }
    }
    t.subtree_population.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        t.subtree_population[i] = g.population(t.nodes[i]);
    }
    for (std::size_t i = n; i-- > 1;) {
        const int v = t.order[i];
        t.subtree_population[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])] +=
            t.subtree_population[static_cast<std::size_t>(v)];
    }
    t.total_population = t.subtree_population[0];
    return t;
}

std::optional<TreeCut> find_cut(const SpanningTree& tree, double ideal, double epsilon,
                                int districts_a, int districts_b, Rng& rng) {
    const double tolerance = epsilon * ideal;
    const auto fits = [&](double pop, int districts) {
        return std::abs(pop - ideal * districts) <= tolerance;
    };
    std::vector<TreeCut> candidates;
    for (std::size_t v = 0; v < tree.size(); ++v) {
        if (tree.parent[v] < 0) {
            continue;
        }
        const auto below = static_cast<double>(tree.subtree_population[v]);
        const auto above = static_cast<double>(tree.total_population) - below;
        if (fits(below, districts_a) && fits(above, districts_b)) {
            candidates.push_back({static_cast<int>(v), districts_a});
        }
        if (districts_a != districts_b && fits(below, districts_b) && fits(above, districts_a)) {
            candidates.push_back({static_cast<int>(v), districts_b});
        }
    }
    if (candidates.empty()) {
        return std::nullopt;
    }
    return candidates[rng.uniform_index(candidates.size())];
}

std::optional<TreeCut> find_balanced_cut(const SpanningTree& tree, double ideal, double epsilon,
                                         Rng& rng) {
    return find_cut(tree, ideal, epsilon, 1, 1, rng);
}

}  // namespace recomp
