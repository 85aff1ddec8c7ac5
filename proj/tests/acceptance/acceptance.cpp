// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any gating criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recomp/analysis.hpp"
#include "recomp/chain.hpp"
#include "recomp/cli.hpp"
#include "recomp/enumerate.hpp"
#include "recomp/io.hpp"
#include "recomp/metrics.hpp"
#include "recomp/optimize.hpp"
#include "recomp/synth.hpp"

using namespace recomp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* name, bool gating, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!out.pass && gating) {
        ++failures;
    }
    std::printf("%s %s (%.2fs) %s%s\n", out.pass ? "PASS" : "FAIL", name, secs, out.detail.c_str(),
                gating ? "" : " [not gating]");
    std::fflush(stdout);
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

const std::vector<double> kEightShares = {0.22, 0.22, 0.22, 0.22, 0.22, 0.495, 0.80, 0.80};

// Independent evaluation: seats counted on percentage points, EG by direct
// substitution.
double eg_direct(double d0, int i) {
    int s = 0;
    for (const double x : kEightShares) {
        s += std::round(x * 1000.0) / 10.0 + i > 50.0 ? 1 : 0;
    }
    return 2.0 * (d0 + i / 100.0) - s / 8.0 - 0.5;
}

Outcome eg_worked_case() {
    const double d0 = 0.399375;
    // Warm-up call, then time a single evaluation.
    (void)eg_swing_profile(kEightShares, d0);
    const auto t0 = Clock::now();
    const auto profile = eg_swing_profile(kEightShares, d0);
    const auto seq = swing_seat_sequence(kEightShares);
    const double elapsed = seconds_since(t0);

    bool ok = elapsed < 1e-3;
    double worst = 0.0;
    for (int i = kSwingMin; i <= kSwingMax; ++i) {
        const auto idx = static_cast<std::size_t>(i - kSwingMin);
        worst = std::max(worst, std::abs(profile[idx]));
        ok = ok && seq[idx] == (i <= 0 ? 2 : 3);
        ok = ok && std::abs(profile[idx] - eg_direct(d0, i)) < 1e-12;
    }
    ok = ok && worst <= 0.0625 + 1e-9;
    std::ostringstream d;
    d << "max|EG|=" << worst << " eval_us=" << elapsed * 1e6;
    return {ok, d.str()};
}

Outcome prescribed_seats_cases() {
    bool ok = true;
    for (int i = -5; i <= 5; ++i) {
        ok = ok && prescribed_seats(0.40, 8, i) == (i <= 0 ? 2 : 3);
    }
    const int wi = eg_swing_band_requirement(0.496, 8).required_in_band;
    const int ut = eg_swing_band_requirement(0.37, 4).required_in_band;
    ok = ok && wi == 2 && ut == 0;
    std::ostringstream d;
    d << "(0.40,8) seats 2 for i<=0, 3 for i>=1; (0.496,8) requires " << wi << "; (0.37,4) requires " << ut;
    return {ok, d.str()};
}

Outcome k5_sweep() {
    const auto t0 = Clock::now();
    int worst_k = 0;
    double worst = 0.0;
    for (int d = 30; d <= 70; ++d) {
        for (int k = 2; k <= 200; ++k) {
            const double gap = std::abs(eg_swing_band_requirement(d / 100.0, k).required_in_band - k / 5.0);
            if (gap > worst) {
                worst = gap;
                worst_k = k;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << "max |required - k/5| = " << worst << " (k=" << worst_k << "), sweep " << elapsed << "s";
    return {worst <= 1.0 && elapsed < 1.0, d.str()};
}

// Spanning-tree count of the subgraph induced by `nodes` (matrix-tree theorem).
double tree_count(const DualGraph& g, const std::vector<NodeIndex>& nodes) {
    const std::size_t n = nodes.size();
    if (n <= 1) {
        return 1.0;
    }
    std::vector<std::vector<double>> lap(n - 1, std::vector<double>(n - 1, 0.0));
    for (std::size_t a = 1; a < n; ++a) {
        for (const NodeIndex w : g.neighbors(nodes[a])) {
            const auto it = std::find(nodes.begin(), nodes.end(), w);
            if (it == nodes.end()) {
                continue;
            }
            lap[a - 1][a - 1] += 1.0;
            const auto b = static_cast<std::size_t>(it - nodes.begin());
            if (b > 0) {
                lap[a - 1][b - 1] -= 1.0;
            }
        }
    }
    double det = 1.0;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r + 1 < n; ++r) {
            if (std::abs(lap[r][c]) > std::abs(lap[pivot][c])) {
                pivot = r;
            }
        }
        if (pivot != c) {
            std::swap(lap[pivot], lap[c]);
            det = -det;
        }
        det *= lap[c][c];
        for (std::size_t r = c + 1; r + 1 < n; ++r) {
            const double f = lap[r][c] / lap[c][c];
            for (std::size_t k = c; k + 1 < n; ++k) {
                lap[r][k] -= f * lap[c][k];
            }
        }
    }
    return det;
}

// Per-step probability of each two-district plan when trees are uniform:
// proportional to trees(A) * trees(B) * edges(A, B).
std::vector<std::pair<PlanKey, double>> split_probabilities(const DualGraph& g, const std::vector<Partition>& plans) {
    std::vector<std::pair<PlanKey, double>> out;
    double total = 0.0;
    for (const auto& p : plans) {
        const auto key = canonical_key(p);
        const double w = tree_count(g, key[0]) * tree_count(g, key[1]) * static_cast<double>(p.cut_edge_count());
        out.emplace_back(key, w);
        total += w;
    }
    for (auto& [key, w] : out) {
        w /= total;
    }
    return out;
}

Outcome oracle_coverage() {
    const auto t0 = Clock::now();
    const auto g = synth_grid(GridSpec{});  // 4x4, unit populations
    const auto plans = enumerate_partitions(g, 2, 0.01);
    std::set<PlanKey> support;
    for (const auto& p : plans) {
        support.insert(canonical_key(p));
    }
    ChainConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.01;
    cfg.steps = 20000;
    cfg.rng_seed = 1;
    cfg.tree_method = TreeMethod::Wilson;
    std::set<PlanKey> visited;
    std::size_t outside = 0;
    run_chain(g, g.votes(), cfg, [&](const PlanRecord&, const Partition& p) {
        const auto key = canonical_key(p);
        outside += support.count(key) == 0 ? 1 : 0;
        visited.insert(key);
    });
    const double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << "oracle " << support.size() << " plans, chain visited " << visited.size() << ", outside support "
      << outside;
    // Context for a miss: how likely was full coverage at this run length?
    double all_covered = 1.0;
    double p_min = 1.0;
    for (const auto& [key, p] : split_probabilities(g, plans)) {
        all_covered *= 1.0 - std::pow(1.0 - p, static_cast<double>(cfg.steps));
        p_min = std::min(p_min, p);
        if (visited.count(key) == 0) {
            d << "; missed plan with per-step probability " << p;
        }
    }
    d << "; rarest plan " << p_min << ", P(full coverage in " << cfg.steps << " steps) = " << all_covered;
    return {visited == support && elapsed < 30.0, d.str()};
}

Outcome chain_audit() {
    GridSpec spec;
    spec.rows = 20;
    spec.cols = 20;
    spec.votes = {VoteModelKind::Gradient, 0.3, 0.7};
    spec.share_noise = 0.05;
    spec.rng_seed = 5;
    const auto g = synth_grid(spec);
    ChainConfig cfg;
    cfg.k = 8;
    cfg.epsilon = 0.02;
    cfg.steps = 100000;
    cfg.rng_seed = 1;

    Rng pick(99);
    std::set<std::int64_t> checkpoints;
    while (checkpoints.size() < 100) {
        checkpoints.insert(static_cast<std::int64_t>(pick.uniform_index(static_cast<std::uint64_t>(cfg.steps))) + 1);
    }
    std::int64_t records = 0, bad = 0, audits = 0, audit_failures = 0;
    const auto t0 = Clock::now();
    const auto stats = run_chain(g, g.votes(), cfg, [&](const PlanRecord& r, const Partition& p) {
        ++records;
        bool ok = is_valid_partition(p) && population_deviation(p) <= cfg.epsilon + 1e-12 &&
                  r.pop_deviation <= cfg.epsilon + 1e-12;
        for (DistrictId d = 0; d < p.k(); ++d) {
            ok = ok && p.node_count(d) > 0;
        }
        bad += ok ? 0 : 1;
        if (checkpoints.count(r.chain_step) != 0) {
            ++audits;
            audit_failures += p.audit() ? 0 : 1;
        }
    });
    const double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << records << " records, " << bad << " invalid, " << audits << " tally audits with " << audit_failures
      << " mismatches, " << stats.accepted << " accepted / " << stats.self_loops << " self-loops";
    return {records == cfg.steps + 1 && bad == 0 && audits == 100 && audit_failures == 0 && elapsed < 600.0,
            d.str()};
}

Outcome optimizer_contrast() {
    GridSpec spec;
    spec.rows = 10;
    spec.cols = 10;
    spec.votes = {VoteModelKind::TwoCluster, 0.3, 0.7};
    const auto g = synth_grid(spec);
    const BandSpec band{5, 50};
    const double epsilon = 0.05;

    ChainConfig neutral;
    neutral.k = 4;
    neutral.epsilon = epsilon;
    neutral.steps = 5000;
    neutral.rng_seed = 1;
    neutral.bands = {band};
    int neutral_max = 0;
    run_chain(g, g.votes(), neutral,
              [&](const PlanRecord& r, const Partition&) { neutral_max = std::max(neutral_max, *r.band_count_for(band)); });

    bool ok = std::abs(statewide_share(g.votes()) - 0.5) < 1e-12;
    std::ostringstream d;
    d << "D0=" << statewide_share(g.votes()) << " neutral max " << neutral_max;
    for (const auto variant : {OptVariant::Opt1, OptVariant::Opt2}) {
        OptConfig cfg;
        cfg.variant = variant;
        cfg.k = 4;
        cfg.epsilon = epsilon;
        cfg.band = band;
        cfg.restarts = 10;
        cfg.flip_attempts = 50000;
        cfg.rng_seed = 1;
        const auto runs = run_optimizer(g, g.votes(), cfg);
        int best = 0;
        std::int64_t violations = 0;
        bool plans_ok = true;
        for (const auto& run : runs) {
            best = std::max(best, *run.record.band_count_for(band));
            violations += certificate_violations(run.trace, variant, cfg.allow_ties);
            plans_ok = plans_ok && is_valid_partition(run.plan) &&
                       population_deviation(run.plan) <= epsilon + 1e-12 &&
                       cut_edge_guard(run.plan, run.baseline_cut_edges, cfg.cut_edge_factor);
        }
        ok = ok && best >= neutral_max && violations == 0 && plans_ok;
        d << (variant == OptVariant::Opt1 ? ", opt1 best " : ", opt2 best ") << best << " (violations "
          << violations << (plans_ok ? "" : ", invalid plan") << ")";
    }
    return {ok, d.str()};
}

Outcome winnowing_structure() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::int64_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        GridSpec spec;
        spec.rows = 10;
        spec.cols = 10;
        spec.votes = {VoteModelKind::Gradient, 0.35 + 0.03 * static_cast<double>(seed), 0.6};
        spec.share_noise = 0.06;
        spec.rng_seed = seed;
        const auto g = synth_grid(spec);
        ChainConfig cfg;
        cfg.k = 5;
        cfg.epsilon = 0.05;
        cfg.steps = 1500;
        cfg.rng_seed = seed;
        cfg.bands = {{5, 50}, {3, 100 * statewide_share(g.votes())}};
        std::vector<PlanRecord> rs;
        run_chain(g, g.votes(), cfg, [&](const PlanRecord& r, const Partition&) { rs.push_back(r); });

        std::vector<double> xs;
        for (int i = 0; i <= cfg.k; ++i) {
            xs.push_back(static_cast<double>(i) / cfg.k);
        }
        std::vector<double> ys;
        for (int y = 0; y <= 25; ++y) {
            ys.push_back(y);
        }
        for (const auto& band : cfg.bands) {
            std::vector<std::int64_t> previous_steps;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const CompressionSpec c{xs[i], band};
                const auto kept = winnow(rs, c);
                std::int64_t direct = 0;
                for (const auto& r : rs) {
                    direct += is_compressed(r, c) ? 1 : 0;
                }
                ok = ok && static_cast<std::int64_t>(kept.size()) == direct;
                if (!kept.empty()) {
                    ok = ok && summarize(kept).count == direct;
                }
                std::vector<std::int64_t> steps;
                for (const auto& r : kept) {
                    steps.push_back(r.chain_step);
                }
                if (i > 0) {
                    ok = ok && std::includes(previous_steps.begin(), previous_steps.end(), steps.begin(), steps.end());
                }
                previous_steps = steps;
                ++checked;
            }
            const auto m = compression_feasibility(rs, xs, ys, band.z);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    if (j > 0) {
                        ok = ok && m[i][j] >= m[i][j - 1];
                    }
                    if (i > 0) {
                        ok = ok && m[i][j] <= m[i - 1][j];
                    }
                }
            }
            ok = ok && std::all_of(m[0].begin(), m[0].end(), [](double f) { return f == 1.0; });
        }
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << checked << " winnow levels checked across 4 ensembles";
    return {ok && elapsed < 10.0, d.str()};
}

// Real state graphs are not shipped, so this exercises the same
// neutral -> analyze path on a synthetic stand-in and checks that ensemble
// and winnowed means come out. Matching the published numbers is not gating.
Outcome real_data_pipeline() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "recomp_acceptance_pipeline";
    fs::remove_all(dir);
    GridSpec spec;
    spec.rows = 12;
    spec.cols = 12;
    spec.votes = {VoteModelKind::Gradient, 0.35, 0.62};
    spec.share_noise = 0.05;
    spec.rng_seed = 8;
    fs::create_directories(dir);
    io::save_graph(synth_grid(spec), dir / "graph.json");

    RunManifest m;
    m.mode = "neutral";
    m.graph = dir / "graph.json";
    m.output_dir = dir / "out";
    m.chain = {{"k", 6}, {"epsilon", 0.05}, {"steps", 500}, {"rng_seed", 1},
               {"bands", {{{"y", 5}, {"z", 50}}, {{"y", 5}, {"z", "D0"}}}}};
    m.analyze = {{"band", {{"y", 5}, {"z", 50}}}};
    m.emit = {"winnow_mm", "bands_hist"};
    std::ostringstream log;
    run(m, log);
    const auto summary = io::read_json(dir / "out" / "summary.json");
    const bool ok = summary.at("count") == 501 && fs::exists(dir / "out" / "winnow_mm.csv") &&
                    summary.contains("mean_seats") && summary.contains("mean_mm");
    std::ostringstream d;
    d << "synthetic stand-in: mean seats " << summary.at("mean_seats").get<double>() << ", mean MM "
      << summary.at("mean_mm").get<double>() << "; no state graph documents supplied";
    fs::remove_all(dir);
    return {ok, d.str()};
}

}  // namespace

int main() {
    report("eg_swing_worked_case", true, eg_worked_case);
    report("prescribed_seats_table", true, prescribed_seats_cases);
    report("k_over_5_sweep", true, k5_sweep);
    report("oracle_support_coverage", true, oracle_coverage);
    report("chain_validity_audit", true, chain_audit);
    report("optimizer_contrast", true, optimizer_contrast);
    report("winnowing_structure", true, winnowing_structure);
    report("real_data_reproduction", false, real_data_pipeline);
    std::printf("%d gating criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
