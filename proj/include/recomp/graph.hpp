#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace recomp {

using NodeIndex = std::int32_t;
using DistrictId = std::int32_t;

struct Edge {
    NodeIndex u;
    NodeIndex v;
};

/// Per-node Democratic/Republican ballots, independent of district lines.
class VotePattern {
public:
    VotePattern() = default;
    VotePattern(std::vector<std::int64_t> dem, std::vector<std::int64_t> rep);

    std::size_t size() const { return dem_.size(); }
    std::int64_t dem(NodeIndex v) const { return dem_[static_cast<std::size_t>(v)]; }
    std::int64_t rep(NodeIndex v) const { return rep_[static_cast<std::size_t>(v)]; }
    std::span<const std::int64_t> dem() const { return dem_; }
    std::span<const std::int64_t> rep() const { return rep_; }
    std::int64_t total_dem() const { return total_dem_; }
    std::int64_t total_rep() const { return total_rep_; }

private:
    std::vector<std::int64_t> dem_;
    std::vector<std::int64_t> rep_;
    std::int64_t total_dem_ = 0;
    std::int64_t total_rep_ = 0;
};

struct NodeRecord {
    std::string id;
    std::int64_t population = 0;
    std::int64_t dem = 0;
    std::int64_t rep = 0;
};

/// Precinct adjacency graph. Immutable once built; construction validates
/// connectivity, self-loops, duplicate edges and attribute signs.
class DualGraph {
public:
    /// Throws DataError naming the offending node or edge.
    static DualGraph build(std::vector<NodeRecord> nodes,
                           const std::vector<std::pair<std::string, std::string>>& edges);

    std::size_t num_nodes() const { return ids_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::string& id(NodeIndex v) const { return ids_[static_cast<std::size_t>(v)]; }
    /// -1 when the id is unknown.
    NodeIndex index_of(const std::string& id) const;

    std::int64_t population(NodeIndex v) const { return population_[static_cast<std::size_t>(v)]; }
    std::span<const std::int64_t> populations() const { return population_; }
    std::int64_t total_population() const { return total_population_; }

    /// The votes carried on the graph document.
    const VotePattern& votes() const { return votes_; }

    std::span<const NodeIndex> neighbors(NodeIndex v) const {
        const auto i = static_cast<std::size_t>(v);
        return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::span<const Edge> edges() const { return edges_; }

private:
    DualGraph() = default;

    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::int64_t> population_;
    std::int64_t total_population_ = 0;
    VotePattern votes_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeIndex> adjacency_;
};

/// Assignment of every node to one of k districts with cached tallies.
///
/// Holds non-owning pointers to its graph and vote pattern; both must outlive
/// the partition. Tallies are kept exact under move_node and reassign.
class Partition {
public:
    Partition(const DualGraph& graph, int k, std::vector<DistrictId> assignment);
    Partition(const DualGraph& graph, const VotePattern& votes, int k,
              std::vector<DistrictId> assignment);

    const DualGraph& graph() const { return *graph_; }
    const VotePattern& votes() const { return *votes_; }
    int k() const { return k_; }

    DistrictId district_of(NodeIndex v) const { return assignment_[static_cast<std::size_t>(v)]; }
    std::span<const DistrictId> assignment() const { return assignment_; }

    std::int64_t population(DistrictId d) const { return pop_[static_cast<std::size_t>(d)]; }
    std::int64_t dem(DistrictId d) const { return dem_[static_cast<std::size_t>(d)]; }
    std::int64_t rep(DistrictId d) const { return rep_[static_cast<std::size_t>(d)]; }
    std::int64_t node_count(DistrictId d) const { return count_[static_cast<std::size_t>(d)]; }
    std::span<const std::int64_t> populations() const { return pop_; }

    std::int64_t cut_edge_count() const { return cut_edges_; }
    /// Number of graph edges joining districts a and b (a != b).
    std::int64_t boundary_edges(DistrictId a, DistrictId b) const {
        return boundary_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k_) +
                         static_cast<std::size_t>(b)];
    }
    /// Unordered district pairs (a < b) sharing at least one cut edge.
    std::vector<std::pair<DistrictId, DistrictId>> adjacent_pairs() const;

    std::vector<NodeIndex> nodes_in(DistrictId d) const;

    void move_node(NodeIndex v, DistrictId to);
    /// Relabels nodes[i] to labels[i] in one batch.
    void reassign(std::span<const NodeIndex> nodes, std::span<const DistrictId> labels);

    /// True iff every cached tally equals a from-scratch recomputation.
    bool audit() const;

private:
    void recompute();
    std::int64_t& boundary_ref(DistrictId a, DistrictId b) {
        return boundary_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k_) +
                         static_cast<std::size_t>(b)];
    }

    const DualGraph* graph_;
    const VotePattern* votes_;
    int k_;
    std::vector<DistrictId> assignment_;
    std::vector<std::int64_t> pop_;
    std::vector<std::int64_t> dem_;
    std::vector<std::int64_t> rep_;
    std::vector<std::int64_t> count_;
    std::vector<std::int64_t> boundary_;
    std::int64_t cut_edges_ = 0;
};

enum class ShareOrder { Ascending, DistrictId };

/// All k districts non-empty and each induced subgraph connected.
bool is_valid_partition(const Partition& p);
/// Whether district d's induced subgraph is connected (false when empty).
bool district_connected(const Partition& p, DistrictId d);
/// Cut edges counted from scratch.
std::int64_t cut_edges(const Partition& p);
/// max_d |pop(d) - ideal| / ideal with ideal = total / k.
double population_deviation(const Partition& p);
/// Democratic two-party share per district. Throws DataError on a
/// zero-vote district.
std::vector<double> district_shares(const Partition& p, const VotePattern& v,
                                    ShareOrder order = ShareOrder::Ascending);
std::vector<double> district_shares(const Partition& p, ShareOrder order = ShareOrder::Ascending);

/// Per-district (dem, rep) tallies under an arbitrary vote pattern.
std::vector<std::pair<std::int64_t, std::int64_t>> district_votes(const Partition& p,
                                                                  const VotePattern& v);

}  // namespace recomp
