#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "recomp/chain.hpp"
#include "recomp/graph.hpp"
#include "recomp/metrics.hpp"

namespace recomp {

enum class OptVariant { Opt1, Opt2 };

struct OptConfig {
    OptVariant variant = OptVariant::Opt1;
    int k = 2;
    double epsilon = 0.02;
    std::int64_t recom_burnin_steps = 200;
    std::int64_t flip_attempts = 1'000'000;
    BandSpec band{5.0, 50.0};
    double cut_edge_factor = 2.0;
    int restarts = 1;
    std::uint64_t rng_seed = 0;
    bool allow_ties = false;
    int tree_retry_limit = 50;
    int pair_retry_limit = 50;
    TreeMethod tree_method = TreeMethod::RandomWeightMst;
    int seed_attempts = 100;

    void validate() const;
    /// ReCom settings used for the seed and the burn-in.
    ChainConfig burnin_chain() const;
};

/// Opt1 rejects only decreases in the band count.
bool opt1_accepts(int old_count, int new_count);
bool opt1_accepts(const PlanRecord& old_record, const PlanRecord& new_record, const BandSpec& band);

/// Sum over districts of the distance (percentage points) from the band.
double opt2_score(std::span<const double> shares, const BandSpec& band);
bool opt2_accepts(double old_score, double new_score, bool allow_ties = false);

/// Closed bound: cut edges at most factor times the burn-in baseline.
bool cut_edge_guard(std::int64_t candidate_cut_edges, std::int64_t baseline_cut_edges, double factor);
bool cut_edge_guard(const Partition& candidate, std::int64_t baseline_cut_edges, double factor);

struct TraceEntry {
    std::int64_t attempt = 0;
    bool valid = false;     // non-empty source, contiguity, population
    bool guard_ok = false;  // evaluated only for valid proposals
    bool accepted = false;
    /// Objective of the current plan before and after the decision: band
    /// count (Opt1) or distance score (Opt2).
    double objective_before = 0.0;
    double objective = 0.0;
};

struct OptRun {
    int restart = 0;
    std::uint64_t seed = 0;
    Partition plan;
    PlanRecord record;
    std::int64_t baseline_cut_edges = 0;
    std::vector<TraceEntry> trace;
};

/// One restart: seed, ReCom burn-in, then guarded greedy Flip proposals.
OptRun run_optimizer_restart(const DualGraph& g, const VotePattern& v, const OptConfig& cfg,
                             int restart);
std::vector<OptRun> run_optimizer(const DualGraph& g, const VotePattern& v, const OptConfig& cfg);

/// Entries that break the variant's monotone certificate: an accepted step
/// that moves the objective the wrong way, or a `before` value that does not
/// continue the previous entry.
std::int64_t certificate_violations(std::span<const TraceEntry> trace, OptVariant variant,
                                    bool allow_ties = false);

}  // namespace recomp
