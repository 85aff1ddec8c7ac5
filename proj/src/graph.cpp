#include "recomp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "recomp/error.hpp"

namespace recomp {

VotePattern::VotePattern(std::vector<std::int64_t> dem, std::vector<std::int64_t> rep)
    : dem_(std::move(dem)), rep_(std::move(rep)) {
    if (dem_.size() != rep_.size()) {
        throw DataError("vote pattern columns differ in length");
    }
    for (std::size_t i = 0; i < dem_.size(); ++i) {
        if (dem_[i] < 0 || rep_[i] < 0) {
            throw DataError("negative vote count at node index " + std::to_string(i));
        }
        total_dem_ += dem_[i];
        total_rep_ += rep_[i];
    }
}

NodeIndex DualGraph::index_of(const std::string& id) const {
    const auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

DualGraph DualGraph::build(std::vector<NodeRecord> nodes,
                           const std::vector<std::pair<std::string, std::string>>& edges) {
    DualGraph g;
    if (nodes.empty()) {
        throw DataError("graph has no nodes");
    }
    std::vector<std::int64_t> dem;
    std::vector<std::int64_t> rep;
    g.ids_.reserve(nodes.size());
    for (auto& node : nodes) {
        if (node.population < 0) {
            throw DataError("negative population at node \"" + node.id + "\"");
        }
        if (node.dem < 0 || node.rep < 0) {
            throw DataError("negative vote count at node \"" + node.id + "\"");
        }
        const auto index = static_cast<NodeIndex>(g.ids_.size());
        if (!g.index_.emplace(node.id, index).second) {
            throw DataError("duplicate node id \"" + node.id + "\"");
        }
        g.ids_.push_back(std::move(node.id));
        g.population_.push_back(node.population);
        g.total_population_ += node.population;
        dem.push_back(node.dem);
        rep.push_back(node.rep);
    }
    if (g.total_population_ <= 0) {
        throw DataError("total population must be positive");
    }
    g.votes_ = VotePattern(std::move(dem), std::move(rep));

    std::set<std::pair<NodeIndex, NodeIndex>> seen;
    for (const auto& [a, b] : edges) {
        const NodeIndex u = g.index_of(a);
        const NodeIndex v = g.index_of(b);
        if (u < 0) {
            throw DataError("edge references unknown node \"" + a + "\"");
        }
        if (v < 0) {
            throw DataError("edge references unknown node \"" + b + "\"");
        }
        if (u == v) {
            throw DataError("self-loop at node \"" + a + "\"");
        }
        const auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            throw DataError("duplicate edge (\"" + a + "\", \"" + b + "\")");
        }
        g.edges_.push_back({key.first, key.second});
    }

    const std::size_t n = g.ids_.size();
    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : g.edges_) {
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    }
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : g.edges_) {
        g.adjacency_[fill[static_cast<std::size_t>(e.u)]++] = e.v;
        g.adjacency_[fill[static_cast<std::size_t>(e.v)]++] = e.u;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                  g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    }

    // Connectivity from node 0.
    std::vector<char> reached(n, 0);
    std::vector<NodeIndex> stack{0};
    reached[0] = 1;
    while (!stack.empty()) {
        const NodeIndex v = stack.back();
        stack.pop_back();
        for (const NodeIndex u : g.neighbors(v)) {
            if (!reached[static_cast<std::size_t>(u)]) {
                reached[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!reached[i]) {
            throw DataError("graph is disconnected: node \"" + g.ids_[i] +
                            "\" is unreachable from \"" + g.ids_[0] + "\"");
        }
    }
    return g;
}

Partition::Partition(const DualGraph& graph, int k, std::vector<DistrictId> assignment)
    : Partition(graph, graph.votes(), k, std::move(assignment)) {}

Partition::Partition(const DualGraph& graph, const VotePattern& votes, int k,
                     std::vector<DistrictId> assignment)
    : graph_(&graph), votes_(&votes), k_(k), assignment_(std::move(assignment)) {
    if (k_ < 1) {
        throw ConfigError("district count must be at least 1");
    }
    if (assignment_.size() != graph.num_nodes()) {
        throw DataError("assignment covers " + std::to_string(assignment_.size()) +
                        " nodes but the graph has " + std::to_string(graph.num_nodes()));
    }
    if (votes.size() != graph.num_nodes()) {
        throw DataError("vote pattern does not match the graph's node set");
    }
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        if (assignment_[i] < 0 || assignment_[i] >= k_) {
            throw DataError("node \"" + graph.id(static_cast<NodeIndex>(i)) +
                            "\" assigned to district " + std::to_string(assignment_[i]) +
                            " outside 0.." + std::to_string(k_ - 1));
        }
    }
    recompute();
}

void Partition::recompute() {
    const auto k = static_cast<std::size_t>(k_);
    pop_.assign(k, 0);
    dem_.assign(k, 0);
    rep_.assign(k, 0);
    count_.assign(k, 0);
    boundary_.assign(k * k, 0);
    cut_edges_ = 0;
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        const auto d = static_cast<std::size_t>(assignment_[i]);
        const auto v = static_cast<NodeIndex>(i);
        pop_[d] += graph_->population(v);
        dem_[d] += votes_->dem(v);
        rep_[d] += votes_->rep(v);
        ++count_[d];
    }
    for (const auto& e : graph_->edges()) {
        const DistrictId a = district_of(e.u);
        const DistrictId b = district_of(e.v);
        if (a != b) {
            ++cut_edges_;
            ++boundary_ref(a, b);
            ++boundary_ref(b, a);
        }
    }
}

std::vector<std::pair<DistrictId, DistrictId>> Partition::adjacent_pairs() const {
    std::vector<std::pair<DistrictId, DistrictId>> pairs;
    for (DistrictId a = 0; a < k_; ++a) {
        for (DistrictId b = a + 1; b < k_; ++b) {
            if (boundary_edges(a, b) > 0) {
                pairs.emplace_back(a, b);
            }
        }
    }
    return pairs;
}

std::vector<NodeIndex> Partition::nodes_in(DistrictId d) const {
    std::vector<NodeIndex> out;
    out.reserve(static_cast<std::size_t>(node_count(d)));
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        if (assignment_[i] == d) {
            out.push_back(static_cast<NodeIndex>(i));
        }
    }
    return out;
}

void Partition::move_node(NodeIndex v, DistrictId to) {
    const DistrictId from = district_of(v);
    if (from == to) {
        return;
    }
    for (const NodeIndex u : graph_->neighbors(v)) {
        const DistrictId du = district_of(u);
        if (du != from) {
            --cut_edges_;
            --boundary_ref(from, du);
            --boundary_ref(du, from);
        }
        if (du != to) {
            ++cut_edges_;
            ++boundary_ref(to, du);
            ++boundary_ref(du, to);
        }
    }
    const auto f = static_cast<std::size_t>(from);
    const auto t = static_cast<std::size_t>(to);
    pop_[f] -= graph_->population(v);
    pop_[t] += graph_->population(v);
    dem_[f] -= votes_->dem(v);
    dem_[t] += votes_->dem(v);
    rep_[f] -= votes_->rep(v);
    rep_[t] += votes_->rep(v);
    --count_[f];
    ++count_[t];
    assignment_[static_cast<std::size_t>(v)] = to;
}

void Partition::reassign(std::span<const NodeIndex> nodes, std::span<const DistrictId> labels) {
    // Sequential single-node moves keep every tally exact, including edges
    // with both endpoints in the batch.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        move_node(nodes[i], labels[i]);
    }
}

bool Partition::audit() const {
    Partition fresh(*graph_, *votes_, k_, assignment_);
    return fresh.pop_ == pop_ && fresh.dem_ == dem_ && fresh.rep_ == rep_ &&
           fresh.count_ == count_ && fresh.boundary_ == boundary_ &&
           fresh.cut_edges_ == cut_edges_;
}

bool district_connected(const Partition& p, DistrictId d) {
    const auto& g = p.graph();
    NodeIndex start = -1;
    std::int64_t expected = 0;
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
        if (p.assignment()[i] == d) {
            if (start < 0) {
                start = static_cast<NodeIndex>(i);
            }
            ++expected;
        }
    }
    if (start < 0) {
        return false;
    }
    std::vector<char> seen(g.num_nodes(), 0);
    std::vector<NodeIndex> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    std::int64_t reached = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ++reached;
        for (const NodeIndex u : g.neighbors(queue[head])) {
            if (!seen[static_cast<std::size_t>(u)] && p.district_of(u) == d) {
                seen[static_cast<std::size_t>(u)] = 1;
                queue.push_back(u);
            }
        }
    }
    return reached == expected;
}

bool is_valid_partition(const Partition& p) {
    for (DistrictId d = 0; d < p.k(); ++d) {
        if (p.node_count(d) == 0 || !district_connected(p, d)) {
            return false;
        }
    }
    return true;
}

std::int64_t cut_edges(const Partition& p) {
    std::int64_t count = 0;
    for (const auto& e : p.graph().edges()) {
        if (p.district_of(e.u) != p.district_of(e.v)) {
            ++count;
        }
    }
    return count;
}

double population_deviation(const Partition& p) {
    const double ideal =
        static_cast<double>(p.graph().total_population()) / static_cast<double>(p.k());
    double worst = 0.0;
    for (DistrictId d = 0; d < p.k(); ++d) {
        worst = std::max(worst, std::abs(static_cast<double>(p.population(d)) - ideal) / ideal);
    }
    return worst;
}

std::vector<std::pair<std::int64_t, std::int64_t>> district_votes(const Partition& p,
                                                                  const VotePattern& v) {
    std::vector<std::pair<std::int64_t, std::int64_t>> tallies(static_cast<std::size_t>(p.k()));
    if (&v == &p.votes()) {
        for (DistrictId d = 0; d < p.k(); ++d) {
            tallies[static_cast<std::size_t>(d)] = {p.dem(d), p.rep(d)};
        }
        return tallies;
    }
    if (v.size() != p.graph().num_nodes()) {
        throw DataError("vote pattern does not match the graph's node set");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto& t = tallies[static_cast<std::size_t>(p.assignment()[i])];
        t.first += v.dem(static_cast<NodeIndex>(i));
        t.second += v.rep(static_cast<NodeIndex>(i));
    }
    return tallies;
}

std::vector<double> district_shares(const Partition& p, const VotePattern& v, ShareOrder order) {
    const auto tallies = district_votes(p, v);
    std::vector<double> shares;
    shares.reserve(tallies.size());
    for (std::size_t d = 0; d < tallies.size(); ++d) {
        const auto [dem, rep] = tallies[d];
        if (dem + rep == 0) {
            throw DataError("zero-vote district " + std::to_string(d));
        }
        shares.push_back(static_cast<double>(dem) / static_cast<double>(dem + rep));
    }
    if (order == ShareOrder::Ascending) {
        std::sort(shares.begin(), shares.end());
    }
    return shares;
}

std::vector<double> district_shares(const Partition& p, ShareOrder order) {
    return district_shares(p, p.votes(), order);
}

}  // namespace recomp
