#pragma once

#include <functional>
#include <string>
#include <vector>

#include "recomp/graph.hpp"
#include "recomp/synth.hpp"

namespace fixtures {

using namespace recomp;

inline DualGraph grid(int rows, int cols, double p = 0.5) {
    GridSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.votes = {VoteModelKind::Uniform, p, p};
    return synth_grid(spec);
}

inline NodeIndex cell(const DualGraph& g, int r, int c) {
    return g.index_of("r" + std::to_string(r) + "c" + std::to_string(c));
}

/// Assignment built from a (row, col) -> district rule.
inline std::vector<DistrictId> labels(const DualGraph& g, int rows, int cols,
                                      const std::function<DistrictId(int, int)>& rule) {
    std::vector<DistrictId> a(g.num_nodes(), 0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            a[static_cast<std::size_t>(cell(g, r, c))] = rule(r, c);
        }
    }
    return a;
}

/// Graph from explicit node records and id pairs.
inline DualGraph make_graph(std::vector<NodeRecord> nodes,
                            std::vector<std::pair<std::string, std::string>> edges) {
    return DualGraph::build(std::move(nodes), edges);
}

/// Two triangles joined through a single bridge node "m":
///   a-b-c triangle, c-m, m-d, d-e-f triangle.
inline DualGraph dumbbell() {
    std::vector<NodeRecord> nodes;
    for (const char* id : {"a", "b", "c", "m", "d", "e", "f"}) {
        nodes.push_back({id, 1, 1, 1});
    }
    return make_graph(nodes, {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "m"}, {"m", "d"},
                              {"d", "e"}, {"e", "f"}, {"d", "f"}});
}

}  // namespace fixtures
