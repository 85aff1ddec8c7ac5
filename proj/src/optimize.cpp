#include "recomp/optimize.hpp"

#include <cmath>

#include "recomp/error.hpp"

namespace recomp {

void OptConfig::validate() const {
    burnin_chain().validate();
    if (recom_burnin_steps < 0) {
        throw ConfigError("recom_burnin_steps must be non-negative");
    }
    if (flip_attempts < 0) {
        throw ConfigError("flip_attempts must be non-negative");
    }
    if (!(cut_edge_factor >= 1.0)) {
        throw ConfigError("cut_edge_factor must be at least 1");
    }
    if (restarts < 1) {
        throw ConfigError("restarts must be at least 1");
    }
}

ChainConfig OptConfig::burnin_chain() const {
    ChainConfig c;
    c.k = k;
    c.epsilon = epsilon;
    c.steps = recom_burnin_steps;
    c.proposal = Proposal::ReCom;
    c.rng_seed = rng_seed;
    c.bands = {band};
    c.tree_retry_limit = tree_retry_limit;
    c.pair_retry_limit = pair_retry_limit;
    c.tree_method = tree_method;
    c.seed_attempts = seed_attempts;
    return c;
}

bool opt1_accepts(int old_count, int new_count) { return new_count >= old_count; }

bool opt1_accepts(const PlanRecord& old_record, const PlanRecord& new_record, const BandSpec& band) {
    const auto before = old_record.band_count_for(band);
    const auto after = new_record.band_count_for(band);
    if (!before || !after) {
        throw ConfigError("plan record carries no count for the optimizer band");
    }
    return opt1_accepts(*before, *after);
}

double opt2_score(std::span<const double> shares, const BandSpec& band) {
    double total = 0.0;
    for (const double s : shares) {
        const double excess = std::abs(100.0 * s - band.z) - band.y;
        total += excess > kBoundaryTolerance ? excess : 0.0;
    }
    return total;
}

bool opt2_accepts(double old_score, double new_score, bool allow_ties) {
    return allow_ties ? new_score <= old_score : new_score < old_score;
}

bool cut_edge_guard(std::int64_t candidate_cut_edges, std::int64_t baseline_cut_edges, double factor) {
    return static_cast<double>(candidate_cut_edges) <= factor * static_cast<double>(baseline_cut_edges);
}

bool cut_edge_guard(const Partition& candidate, std::int64_t baseline_cut_edges, double factor) {
    return cut_edge_guard(candidate.cut_edge_count(), baseline_cut_edges, factor);
}

namespace {

double objective(const Partition& p, const VotePattern& v, const OptConfig& cfg) {
    const auto shares = district_shares(p, v, ShareOrder::DistrictId);
    return cfg.variant == OptVariant::Opt1 ? static_cast<double>(band_count(shares, cfg.band))
                                           : opt2_score(shares, cfg.band);
}

bool improves(double before, double after, const OptConfig& cfg) {
    return cfg.variant == OptVariant::Opt1
               ? opt1_accepts(static_cast<int>(before), static_cast<int>(after))
               : opt2_accepts(before, after, cfg.allow_ties);
}

}  // namespace

OptRun run_optimizer_restart(const DualGraph& g, const VotePattern& v, const OptConfig& cfg,
                             int restart) {
    const std::uint64_t seed = derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(restart));
    Rng rng(seed);
    ChainConfig chain = cfg.burnin_chain();
    chain.rng_seed = seed;
    Partition plan = seed_partition(g, v, cfg.k, cfg.epsilon, rng, cfg.tree_retry_limit,
                                    cfg.seed_attempts, cfg.tree_method);
    advance_chain(plan, chain, cfg.recom_burnin_steps, rng);

    OptRun run{restart, seed, plan, {}, plan.cut_edge_count(), {}};
    run.trace.reserve(static_cast<std::size_t>(cfg.flip_attempts));
    double current = objective(run.plan, v, cfg);
    for (std::int64_t attempt = 0; attempt < cfg.flip_attempts; ++attempt) {
        TraceEntry entry;
        entry.attempt = attempt;
        entry.objective_before = current;
        const auto flip = propose_flip(run.plan, cfg.epsilon, rng);
        entry.valid = flip.node >= 0 && flip.valid();
        if (entry.valid) {
            apply_flip(run.plan, flip);
            entry.guard_ok = cut_edge_guard(run.plan, run.baseline_cut_edges, cfg.cut_edge_factor);
            if (entry.guard_ok) {
                const double candidate = objective(run.plan, v, cfg);
                if (improves(current, candidate, cfg)) {
                    entry.accepted = true;
                    current = candidate;
                }
            }
            if (!entry.accepted) {
                run.plan.move_node(flip.node, flip.from);
            }
        }
        entry.objective = current;
        run.trace.push_back(entry);
    }
    run.record = make_plan_record(run.plan, v, std::span<const BandSpec>(&cfg.band, 1), restart);
    return run;
}

std::vector<OptRun> run_optimizer(const DualGraph& g, const VotePattern& v, const OptConfig& cfg) {
    cfg.validate();
    std::vector<OptRun> runs;
    runs.reserve(static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
        runs.push_back(run_optimizer_restart(g, v, cfg, r));
    }
    return runs;
}

std::int64_t certificate_violations(std::span<const TraceEntry> trace, OptVariant variant,
                                    bool allow_ties) {
    std::int64_t violations = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& e = trace[i];
        if (i > 0 && e.objective_before != trace[i - 1].objective) {
            ++violations;
            continue;
        }
        if (!e.accepted) {
            violations += e.objective != e.objective_before ? 1 : 0;
            continue;
        }
        const bool ok = variant == OptVariant::Opt1
                            ? e.objective >= e.objective_before
                            : (allow_ties ? e.objective <= e.objective_before
                                          : e.objective < e.objective_before);
        violations += ok ? 0 : 1;
    }
    return violations;
}

}  // namespace recomp
