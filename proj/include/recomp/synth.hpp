#pragma once

#include <cstdint>
#include <span>

#include "recomp/graph.hpp"

namespace recomp {

enum class VoteModelKind {
    /// Every node at share p0.
    Uniform,
    /// Share runs linearly from p0 (first row) to p1 (last row).
    Gradient,
    /// First half of the rows at p0, the rest at p1.
    TwoCluster,
};

struct VoteModel {
    VoteModelKind kind = VoteModelKind::Uniform;
    double p0 = 0.5;
    double p1 = 0.5;
};

struct GridSpec {
    int rows = 4;
    int cols = 4;
    VoteModel votes;
    std::int64_t turnout = 100;
    std::int64_t population = 1;
    /// Standard deviation of an optional per-node share perturbation drawn
    /// from the seeded stream; zero gives a fully deterministic grid.
    double share_noise = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Rook-adjacency grid with node ids "r<row>c<col>". Per-node ballots are
/// dem = round(share * turnout), rep = turnout - dem.
DualGraph synth_grid(const GridSpec& spec);

/// Path graph "n0" .. "n<n-1>" with the given per-node populations and
/// equal 50/50 votes. Handy for tests and tiny oracles.
DualGraph path_graph(std::span<const std::int64_t> populations);

}  // namespace recomp
