#include "recomp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recomp/error.hpp"
#include "recomp/rng.hpp"

namespace recomp {

namespace {

std::string cell_id(int r, int c) { return "r" + std::to_string(r) + "c" + std::to_string(c); }

double model_share(const VoteModel& m, int row, int rows) {
    switch (m.kind) {
    case VoteModelKind::Uniform:
        return m.p0;
    case VoteModelKind::Gradient:
        return rows == 1 ? m.p0 : m.p0 + (m.p1 - m.p0) * row / static_cast<double>(rows - 1);
    case VoteModelKind::TwoCluster:
        return 2 * row < rows ? m.p0 : m.p1;
    }
    return m.p0;
}

// Box-Muller on the library generator, so noise is reproducible everywhere.
double gaussian(Rng& rng) {
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

DualGraph synth_grid(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) {
        throw ConfigError("grid needs rows >= 1 and cols >= 1");
    }
    const auto& m = spec.votes;
    if (!(m.p0 >= 0.0 && m.p0 <= 1.0 && m.p1 >= 0.0 && m.p1 <= 1.0)) {
        throw ConfigError("vote model shares must lie in [0, 1]");
    }
    if (spec.turnout < 0 || spec.population < 0 || spec.share_noise < 0.0) {
        throw ConfigError("turnout, population and noise must be non-negative");
    }
    Rng rng(spec.rng_seed);
    std::vector<NodeRecord> nodes;
    nodes.reserve(static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols));
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            double share = model_share(m, r, spec.rows);
            if (spec.share_noise > 0.0) {
                share = std::clamp(share + spec.share_noise * gaussian(rng), 0.0, 1.0);
            }
            const auto dem = static_cast<std::int64_t>(std::llround(share * static_cast<double>(spec.turnout)));
            nodes.push_back({cell_id(r, c), spec.population, dem, spec.turnout - dem});
        }
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            if (c + 1 < spec.cols) {
                edges.emplace_back(cell_id(r, c), cell_id(r, c + 1));
            }
            if (r + 1 < spec.rows) {
                edges.emplace_back(cell_id(r, c), cell_id(r + 1, c));
            }
        }
    }
    return DualGraph::build(std::move(nodes), edges);
}

DualGraph path_graph(std::span<const std::int64_t> populations) {
    std::vector<NodeRecord> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < populations.size(); ++i) {
        nodes.push_back({"n" + std::to_string(i), populations[i], 50, 50});
        if (i > 0) {
            edges.emplace_back("n" + std::to_string(i - 1), "n" + std::to_string(i));
        }
    }
    return DualGraph::build(std::move(nodes), edges);
}

}  // namespace recomp
