#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "recomp/graph.hpp"
#include "recomp/metrics.hpp"
#include "recomp/rng.hpp"
#include "recomp/spanning_tree.hpp"

namespace recomp {

enum class Proposal { ReCom, Flip };

struct ChainConfig {
    int k = 2;
    double epsilon = 0.02;
    std::int64_t steps = 0;
    Proposal proposal = Proposal::ReCom;
    std::uint64_t rng_seed = 0;
    std::vector<BandSpec> bands{BandSpec{5.0, 50.0}};
    int tree_retry_limit = 50;
    int pair_retry_limit = 50;
    TreeMethod tree_method = TreeMethod::RandomWeightMst;
    /// Whole-plan restarts the recursive seed may use before giving up.
    int seed_attempts = 100;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

double ideal_population(const DualGraph& g, int k);

/// Recursive spanning-tree seed: each region holding r districts is split
/// into floor(r/2) and r - floor(r/2) districts until every region holds one.
/// Throws InfeasibleError (carrying the attempt count) when no seed is found.
Partition seed_partition(const DualGraph& g, const VotePattern& v, int k, double epsilon, Rng& rng,
                         int tree_retry_limit = 50, int seed_attempts = 100,
                         TreeMethod method = TreeMethod::RandomWeightMst);

struct RecomOutcome {
    bool accepted = false;
    DistrictId a = -1;
    DistrictId b = -1;
    int pairs_tried = 0;
    int trees_drawn = 0;
};

/// One ReCom move in place. On failure after all retries the partition is
/// left untouched (a self-loop).
RecomOutcome recom_step(Partition& p, const ChainConfig& cfg, Rng& rng);

/// Single-node reassignment proposal plus the checks acceptance layers need.
struct FlipProposal {
    NodeIndex node = -1;
    DistrictId from = -1;
    DistrictId to = -1;
    bool source_nonempty = false;
    bool contiguous = false;
    bool population_ok = false;

    bool valid() const { return source_nonempty && contiguous && population_ok; }
};

/// Picks a cut edge uniformly, then one endpoint uniformly, and proposes
/// moving it into the other endpoint's district. Requires k >= 2 and a
/// plan with at least one cut edge.
FlipProposal propose_flip(const Partition& p, double epsilon, Rng& rng);
void apply_flip(Partition& p, const FlipProposal& flip);

/// Whether district `d` stays connected once `removed` leaves it.
bool connected_without(const Partition& p, DistrictId d, NodeIndex removed);

struct ChainStats {
    std::int64_t steps = 0;
    std::int64_t accepted = 0;
    std::int64_t self_loops = 0;
    std::int64_t trees_drawn = 0;
};

/// Called once per emitted record with the plan it describes.
using RecordSink = std::function<void(const PlanRecord&, const Partition&)>;

/// Seeds, then emits one record for the seed (step 0) and one per step.
ChainStats run_chain(const DualGraph& g, const VotePattern& v, const ChainConfig& cfg,
                     const RecordSink& sink);

/// Continues a chain from an existing plan without emitting records.
ChainStats advance_chain(Partition& p, const ChainConfig& cfg, std::int64_t steps, Rng& rng);

}  // namespace recomp
