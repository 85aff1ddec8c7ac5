#include "recomp/chain.hpp"

#include <cmath>

#include "recomp/error.hpp"

namespace recomp {

void ChainConfig::validate() const {
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ConfigError("epsilon must be positive");
    }
    if (steps < 0) {
        throw ConfigError("steps must be non-negative");
    }
    if (tree_retry_limit < 1 || pair_retry_limit < 1 || seed_attempts < 1) {
        throw ConfigError("retry limits must be at least 1");
    }
    for (const auto& b : bands) {
        if (!(b.y > 0.0) || b.z < 0.0 || b.z > 100.0) {
            throw ConfigError("band needs y > 0 and z in [0, 100]");
        }
    }
}

double ideal_population(const DualGraph& g, int k) {
    return static_cast<double>(g.total_population()) / static_cast<double>(k);
}

namespace {

struct Region {
    std::vector<NodeIndex> nodes;
    int districts;
};

// One attempt at a full recursive split. Returns false when some region
// exhausted its tree budget.
bool try_seed(const DualGraph& g, int k, double epsilon, Rng& rng, int tree_retry_limit,
              TreeMethod method, std::vector<DistrictId>& assignment) {
    const double ideal = ideal_population(g, k);
    std::vector<NodeIndex> all(g.num_nodes());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = static_cast<NodeIndex>(i);
    }
    std::vector<Region> pending{{std::move(all), k}};
    DistrictId next_label = 0;
    while (!pending.empty()) {
        Region region = std::move(pending.back());
        pending.pop_back();
        if (region.districts == 1) {
            for (const NodeIndex v : region.nodes) {
                assignment[static_cast<std::size_t>(v)] = next_label;
            }
            ++next_label;
            continue;
        }
        const int small = region.districts / 2;
        const int large = region.districts - small;
        bool split = false;
        for (int attempt = 0; attempt < tree_retry_limit && !split; ++attempt) {
            const auto tree = random_spanning_tree(g, region.nodes, rng, method);
            const auto cut = find_cut(tree, ideal, epsilon, small, large, rng);
            if (!cut) {
                continue;
            }
            const auto below = tree.subtree(cut->child);
            std::vector<char> inside(tree.size(), 0);
            for (const int v : below) {
                inside[static_cast<std::size_t>(v)] = 1;
            }
            Region child{{}, cut->child_side_districts};
            Region rest{{}, region.districts - cut->child_side_districts};
            for (std::size_t i = 0; i < tree.size(); ++i) {
                (inside[i] ? child : rest).nodes.push_back(tree.nodes[i]);
            }
            pending.push_back(std::move(rest));
            pending.push_back(std::move(child));
            split = true;
        }
        if (!split) {
            return false;
        }
    }
    return true;
}

}  // namespace

Partition seed_partition(const DualGraph& g, const VotePattern& v, int k, double epsilon, Rng& rng,
                         int tree_retry_limit, int seed_attempts, TreeMethod method) {
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (static_cast<std::size_t>(k) > g.num_nodes()) {
        throw InfeasibleError("cannot form " + std::to_string(k) + " non-empty districts from " +
                                  std::to_string(g.num_nodes()) + " nodes",
                              0);
    }
    std::vector<DistrictId> assignment(g.num_nodes(), 0);
    for (int attempt = 1; attempt <= seed_attempts; ++attempt) {
        if (try_seed(g, k, epsilon, rng, tree_retry_limit, method, assignment)) {
            return Partition(g, v, k, std::move(assignment));
        }
    }
    throw InfeasibleError("no balanced seed plan found after " + std::to_string(seed_attempts) +
                              " attempts",
                          seed_attempts);
}

RecomOutcome recom_step(Partition& p, const ChainConfig& cfg, Rng& rng) {
    RecomOutcome out;
    const auto pairs = p.adjacent_pairs();
    if (pairs.empty()) {
        return out;
    }
    const DualGraph& g = p.graph();
    const double ideal = ideal_population(g, p.k());
    for (int pair_try = 0; pair_try < cfg.pair_retry_limit; ++pair_try) {
        const auto [a, b] = pairs[rng.uniform_index(pairs.size())];
        ++out.pairs_tried;
        std::vector<NodeIndex> merged;
        merged.reserve(static_cast<std::size_t>(p.node_count(a) + p.node_count(b)));
        for (std::size_t i = 0; i < g.num_nodes(); ++i) {
            const DistrictId d = p.assignment()[i];
            if (d == a || d == b) {
                merged.push_back(static_cast<NodeIndex>(i));
            }
        }
        for (int tree_try = 0; tree_try < cfg.tree_retry_limit; ++tree_try) {
            const auto tree = random_spanning_tree(g, merged, rng, cfg.tree_method);
            ++out.trees_drawn;
            const auto cut = find_balanced_cut(tree, ideal, cfg.epsilon, rng);
            if (!cut) {
                continue;
            }
            std::vector<DistrictId> labels(tree.size(), b);
            for (const int v : tree.subtree(cut->child)) {
                labels[static_cast<std::size_t>(v)] = a;
            }
            std::vector<NodeIndex> changed_nodes;
            std::vector<DistrictId> changed_labels;
            for (std::size_t i = 0; i < tree.size(); ++i) {
                if (p.district_of(tree.nodes[i]) != labels[i]) {
                    changed_nodes.push_back(tree.nodes[i]);
                    changed_labels.push_back(labels[i]);
                }
            }
            p.reassign(changed_nodes, changed_labels);
            out.accepted = true;
            out.a = a;
            out.b = b;
            return out;
        }
    }
    return out;
}

bool connected_without(const Partition& p, DistrictId d, NodeIndex removed) {
    const DualGraph& g = p.graph();
    const std::int64_t remaining =
        p.node_count(d) - (p.district_of(removed) == d ? 1 : 0);
    if (remaining <= 0) {
        return false;
    }
    NodeIndex start = -1;
    for (const NodeIndex u : g.neighbors(removed)) {
        if (p.district_of(u) == d) {
            start = u;
            break;
        }
    }
    if (start < 0) {
        // No neighbor inside d: d is already split, so any start node will
        // come up short of `remaining`.
        for (std::size_t i = 0; i < g.num_nodes(); ++i) {
            if (p.assignment()[i] == d && static_cast<NodeIndex>(i) != removed) {
                start = static_cast<NodeIndex>(i);
                break;
            }
        }
    }
    std::vector<char> seen(g.num_nodes(), 0);
    seen[static_cast<std::size_t>(removed)] = 1;
    seen[static_cast<std::size_t>(start)] = 1;
    std::vector<NodeIndex> stack{start};
    std::int64_t reached = 0;
    while (!stack.empty()) {
        const NodeIndex v = stack.back();
        stack.pop_back();
        ++reached;
        for (const NodeIndex u : g.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(u)] && p.district_of(u) == d) {
                seen[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
    return reached == remaining;
}

FlipProposal propose_flip(const Partition& p, double epsilon, Rng& rng) {
    const DualGraph& g = p.graph();
    FlipProposal flip;
    const std::int64_t cut = p.cut_edge_count();
    if (p.k() < 2 || cut == 0) {
        return flip;
    }
    // Walk to the chosen cut edge in edge-list order.
    auto target = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(cut)));
    Edge chosen{-1, -1};
    for (const auto& e : g.edges()) {
        if (p.district_of(e.u) != p.district_of(e.v) && target-- == 0) {
            chosen = e;
            break;
        }
    }
    const bool first = rng.uniform_index(2) == 0;
    flip.node = first ? chosen.u : chosen.v;
    const NodeIndex other = first ? chosen.v : chosen.u;
    flip.from = p.district_of(flip.node);
    flip.to = p.district_of(other);

    flip.source_nonempty = p.node_count(flip.from) > 1;
    const double ideal = ideal_population(g, p.k());
    const double tolerance = epsilon * ideal;
    const auto pop = static_cast<double>(g.population(flip.node));
    flip.population_ok =
        std::abs(static_cast<double>(p.population(flip.from)) - pop - ideal) <= tolerance &&
        std::abs(static_cast<double>(p.population(flip.to)) + pop - ideal) <= tolerance;
    flip.contiguous = flip.source_nonempty && connected_without(p, flip.from, flip.node);
    return flip;
}

void apply_flip(Partition& p, const FlipProposal& flip) { p.move_node(flip.node, flip.to); }

ChainStats advance_chain(Partition& p, const ChainConfig& cfg, std::int64_t steps, Rng& rng) {
    ChainStats stats;
    for (std::int64_t s = 0; s < steps; ++s) {
        ++stats.steps;
        bool moved = false;
        if (cfg.proposal == Proposal::ReCom) {
            const auto outcome = recom_step(p, cfg, rng);
            stats.trees_drawn += outcome.trees_drawn;
            moved = outcome.accepted;
        } else {
            const auto flip = propose_flip(p, cfg.epsilon, rng);
            if (flip.node >= 0 && flip.valid()) {
                apply_flip(p, flip);
                moved = true;
            }
        }
        if (moved) {
            ++stats.accepted;
        } else {
            ++stats.self_loops;
        }
    }
    return stats;
}

ChainStats run_chain(const DualGraph& g, const VotePattern& v, const ChainConfig& cfg,
                     const RecordSink& sink) {
    cfg.validate();
    Rng rng(cfg.rng_seed);
    Partition p = seed_partition(g, v, cfg.k, cfg.epsilon, rng, cfg.tree_retry_limit,
                                 cfg.seed_attempts, cfg.tree_method);
    sink(make_plan_record(p, v, cfg.bands, 0), p);
    ChainStats stats;
    for (std::int64_t step = 1; step <= cfg.steps; ++step) {
        const auto one = advance_chain(p, cfg, 1, rng);
        stats.steps += one.steps;
        stats.accepted += one.accepted;
        stats.self_loops += one.self_loops;
        stats.trees_drawn += one.trees_drawn;
        sink(make_plan_record(p, v, cfg.bands, step), p);
    }
    return stats;
}

}  // namespace recomp
