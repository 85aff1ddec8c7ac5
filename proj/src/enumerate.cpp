#include "recomp/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "recomp/error.hpp"

namespace recomp {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }
int lowest(Mask m) { return std::countr_zero(m); }

class Enumerator {
public:
    Enumerator(const DualGraph& g, const VotePattern& v, int k, double epsilon,
               EnumerationBudget budget)
        : g_(g), votes_(v), k_(k), budget_(budget) {
        const auto n = g.num_nodes();
        ideal_ = static_cast<double>(g.total_population()) / k;
        tolerance_ = epsilon * ideal_;
        nbrs_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (const NodeIndex u : g.neighbors(static_cast<NodeIndex>(i))) {
                nbrs_[i] |= bit(u);
            }
        }
        labels_.assign(n, -1);
    }

    std::vector<Partition> run() {
        const auto n = static_cast<int>(g_.num_nodes());
        if (k_ <= n) {
            const Mask all = n == 64 ? ~Mask{0} : (bit(n) - 1);
            place(all, 0);
        }
        return std::move(out_);
    }

private:
    std::int64_t pop(Mask m) const {
        std::int64_t total = 0;
        while (m != 0) {
            total += g_.population(lowest(m));
            m &= m - 1;
        }
        return total;
    }

    bool fits(std::int64_t p, int districts) const {
        return std::abs(static_cast<double>(p) - ideal_ * districts) <= tolerance_;
    }

    // Sound prune: each component of `m` must hold a whole number of
    // districts, and their smallest such counts must not exceed `districts`.
    bool components_feasible(Mask m, int districts) const {
        int used = 0;
        while (m != 0) {
            Mask comp = bit(lowest(m));
            Mask frontier = comp;
            while (frontier != 0) {
                const int v = lowest(frontier);
                frontier &= frontier - 1;
                const Mask fresh = nbrs_[static_cast<std::size_t>(v)] & m & ~comp;
                comp |= fresh;
                frontier |= fresh;
            }
            m &= ~comp;
            const std::int64_t p = pop(comp);
            int smallest = 0;
            for (int c = 1; c <= districts - used && smallest == 0; ++c) {
                if (fits(p, c)) {
                    smallest = c;
                }
            }
            if (smallest == 0) {
                return false;
            }
            used += smallest;
        }
        return true;
    }

    bool connected(Mask m) const {
        if (m == 0) {
            return false;
        }
        Mask comp = bit(lowest(m));
        Mask frontier = comp;
        while (frontier != 0) {
            const int v = lowest(frontier);
            frontier &= frontier - 1;
            const Mask fresh = nbrs_[static_cast<std::size_t>(v)] & m & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        return comp == m;
    }

    void emit() {
        if (out_.size() >= budget_.max_partitions) {
            throw InfeasibleError("enumeration exceeded the budget of " +
                                  std::to_string(budget_.max_partitions) + " partitions");
        }
        out_.emplace_back(g_, votes_, k_, labels_);
    }

    void assign(Mask m, DistrictId d) {
        while (m != 0) {
            labels_[static_cast<std::size_t>(lowest(m))] = d;
            m &= m - 1;
        }
    }

    // Place district `d` around the lowest unassigned node, then recurse.
    void place(Mask avail, DistrictId d) {
        const int remaining = k_ - d;
        if (remaining == 1) {
            if (connected(avail) && fits(pop(avail), 1)) {
                assign(avail, d);
                emit();
            }
            return;
        }
        const int root = lowest(avail);
        const Mask start = bit(root);
        grow(start, nbrs_[static_cast<std::size_t>(root)] & avail, 0, pop(start), avail, d);
    }

    // Connected sets containing the root, each generated once: a branch that
    // adds candidate w forbids every earlier candidate from later branches.
    void grow(Mask set, Mask ext, Mask forbidden, std::int64_t set_pop, Mask avail, DistrictId d) {
        if (fits(set_pop, 1)) {
            const Mask rest = avail & ~set;
            if (rest != 0 && components_feasible(rest, k_ - d - 1)) {
                assign(set, d);
                place(rest, d + 1);
            }
        }
        if (static_cast<double>(set_pop) > ideal_ + tolerance_) {
            return;
        }
        while (ext != 0) {
            const int w = lowest(ext);
            ext &= ext - 1;
            const Mask next_set = set | bit(w);
            const Mask next_ext =
                ext | (nbrs_[static_cast<std::size_t>(w)] & avail & ~next_set & ~forbidden);
            grow(next_set, next_ext, forbidden, set_pop + g_.population(w), avail, d);
            forbidden |= bit(w);
        }
    }

    const DualGraph& g_;
    const VotePattern& votes_;
    int k_;
    EnumerationBudget budget_;
    double ideal_ = 0.0;
    double tolerance_ = 0.0;
    std::vector<Mask> nbrs_;
    std::vector<DistrictId> labels_;
    std::vector<Partition> out_;
};

}  // namespace

std::vector<Partition> enumerate_partitions(const DualGraph& g, const VotePattern& v, int k,
                                            double epsilon, EnumerationBudget budget) {
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (g.num_nodes() > std::min<std::size_t>(budget.max_nodes, 64)) {
        throw InfeasibleError("enumeration refused: " + std::to_string(g.num_nodes()) +
                              " nodes exceeds the budget of " +
                              std::to_string(std::min<std::size_t>(budget.max_nodes, 64)));
    }
    return Enumerator(g, v, k, epsilon, budget).run();
}

std::vector<Partition> enumerate_partitions(const DualGraph& g, int k, double epsilon,
                                            EnumerationBudget budget) {
    return enumerate_partitions(g, g.votes(), k, epsilon, budget);
}

PlanKey canonical_key(const Partition& p) {
    PlanKey key(static_cast<std::size_t>(p.k()));
    for (std::size_t i = 0; i < p.assignment().size(); ++i) {
        key[static_cast<std::size_t>(p.assignment()[i])].push_back(static_cast<NodeIndex>(i));
    }
    std::sort(key.begin(), key.end());
    return key;
}

}  // namespace recomp
