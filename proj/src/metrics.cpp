#include "recomp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recomp/error.hpp"

namespace recomp {

std::optional<int> PlanRecord::band_count_for(const BandSpec& band) const {
    for (const auto& bc : band_counts) {
        if (bc.band == band) {
            return bc.count;
        }
    }
    return std::nullopt;
}

double statewide_share(const VotePattern& v) {
    const std::int64_t total = v.total_dem() + v.total_rep();
    if (total <= 0) {
        throw DataError("statewide two-party vote is zero");
    }
    return static_cast<double>(v.total_dem()) / static_cast<double>(total);
}

int seats(std::span<const double> shares) {
    return static_cast<int>(std::count_if(shares.begin(), shares.end(),
                                          [](double s) { return s > 0.5; }));
}

int seats(const Partition& p, const VotePattern& v) {
    int count = 0;
    for (const auto& [dem, rep] : district_votes(p, v)) {
        if (dem > rep) {
            ++count;
        }
    }
    return count;
}

bool in_band(double share, const BandSpec& band) {
    return std::abs(100.0 * share - band.z) <= band.y + kBoundaryTolerance;
}

int band_count(std::span<const double> shares, const BandSpec& band) {
    return static_cast<int>(std::count_if(shares.begin(), shares.end(),
                                          [&](double s) { return in_band(s, band); }));
}

int required_districts(double x, int k) {
    return static_cast<int>(std::ceil(x * static_cast<double>(k) - kBoundaryTolerance));
}

bool is_compressed(std::span<const double> shares, const CompressionSpec& spec) {
    return band_count(shares, spec.band) >= required_districts(spec.x, static_cast<int>(shares.size()));
}

std::vector<int> sliding_band_curve(std::span<const double> shares, double z,
                                    std::span<const double> y_grid) {
    std::vector<int> curve;
    curve.reserve(y_grid.size());
    for (const double y : y_grid) {
        curve.push_back(band_count(shares, BandSpec{y, z}));
    }
    return curve;
}

double mean_median(std::span<const double> shares) {
    if (shares.empty()) {
        throw DataError("mean-median of an empty plan");
    }
    std::vector<double> sorted(shares.begin(), shares.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    return median - mean;
}

double efficiency_gap_simplified(double d0, int seats, int k) {
    return 2.0 * d0 - static_cast<double>(seats) / static_cast<double>(k) - 0.5;
}

double turnout_noise(double seat_share, double rho) {
    const double s = seat_share;
    const double denom = s * (1.0 - rho) + rho;
    if (denom == 0.0) {
        return 0.0;
    }
    return s * (s - 1.0) * (1.0 - rho) / denom;
}

namespace {

struct TurnoutSplit {
    int dem_won = 0;
    int rep_won = 0;
    double rho = 1.0;
};

TurnoutSplit turnout_ratio(const std::vector<std::pair<std::int64_t, std::int64_t>>& tallies) {
    TurnoutSplit out;
    std::int64_t dem_turnout = 0;
    std::int64_t rep_turnout = 0;
    for (const auto& [dem, rep] : tallies) {
        if (dem > rep) {
            ++out.dem_won;
            dem_turnout += dem + rep;
        } else {
            ++out.rep_won;
            rep_turnout += dem + rep;
        }
    }
    if (out.dem_won > 0 && out.rep_won > 0) {
        const double dem_avg = static_cast<double>(dem_turnout) / out.dem_won;
        const double rep_avg = static_cast<double>(rep_turnout) / out.rep_won;
        out.rho = dem_avg / rep_avg;
    }
    return out;
}

void require_nonzero_districts(const std::vector<std::pair<std::int64_t, std::int64_t>>& tallies) {
    for (std::size_t d = 0; d < tallies.size(); ++d) {
        if (tallies[d].first + tallies[d].second == 0) {
            throw DataError("zero-vote district " + std::to_string(d));
        }
    }
}

}  // namespace

EfficiencyGap efficiency_gap(const Partition& p, const VotePattern& v, bool include_noise) {
    const auto tallies = district_votes(p, v);
    require_nonzero_districts(tallies);
    const double d0 = statewide_share(v);
    const auto split = turnout_ratio(tallies);
    EfficiencyGap out;
    out.simplified = efficiency_gap_simplified(d0, split.dem_won, p.k());
    out.value = out.simplified;
    if (include_noise) {
        if (split.dem_won == 0 || split.rep_won == 0) {
            out.noise_fallback = true;
        } else {
            out.rho = split.rho;
            const double s = static_cast<double>(split.dem_won) / static_cast<double>(p.k());
            out.value += turnout_noise(s, split.rho);
        }
    }
    return out;
}

double swing_share(double share, double i) { return std::clamp(share + i / 100.0, 0.0, 1.0); }

std::vector<double> uniform_swing(std::span<const double> shares, double i) {
    std::vector<double> out;
    out.reserve(shares.size());
    for (const double s : shares) {
        out.push_back(swing_share(s, i));
    }
    return out;
}

int swung_seats(std::span<const double> shares, double i) {
    return static_cast<int>(std::count_if(shares.begin(), shares.end(), [&](double s) {
        return 100.0 * swing_share(s, i) > 50.0 + kBoundaryTolerance;
    }));
}

std::array<int, kSwingCount> swing_seat_sequence(std::span<const double> shares) {
    std::array<int, kSwingCount> out{};
    for (int i = kSwingMin; i <= kSwingMax; ++i) {
        out[static_cast<std::size_t>(i - kSwingMin)] = swung_seats(shares, i);
    }
    return out;
}

SwingProfile eg_swing_profile(std::span<const double> shares, double d0) {
    const int k = static_cast<int>(shares.size());
    SwingProfile out{};
    for (int i = kSwingMin; i <= kSwingMax; ++i) {
        out[static_cast<std::size_t>(i - kSwingMin)] =
            efficiency_gap_simplified(d0 + i / 100.0, swung_seats(shares, i), k);
    }
    return out;
}

SwingProfile eg_swing_profile(const Partition& p, const VotePattern& v, bool include_noise) {
    const auto tallies = district_votes(p, v);
    require_nonzero_districts(tallies);
    const double d0 = statewide_share(v);
    const auto unswung = turnout_ratio(tallies);
    const bool noise = include_noise && unswung.dem_won > 0 && unswung.rep_won > 0;
    SwingProfile out{};
    for (int i = kSwingMin; i <= kSwingMax; ++i) {
        // dem / T + i / 100 > 1/2  <=>  100 dem + i T > 50 T, exact on integers.
        int swung = 0;
        for (const auto& [dem, rep] : tallies) {
            const std::int64_t total = dem + rep;
            if (100 * dem + static_cast<std::int64_t>(i) * total > 50 * total) {
                ++swung;
            }
        }
        double eg = efficiency_gap_simplified(d0 + i / 100.0, swung, p.k());
        if (noise) {
            eg += turnout_noise(static_cast<double>(swung) / static_cast<double>(p.k()), unswung.rho);
        }
        out[static_cast<std::size_t>(i - kSwingMin)] = eg;
    }
    return out;
}

int prescribed_seats(double d0, int k, int i) {
    const double target = static_cast<double>(k) * (2.0 * (d0 + i / 100.0) - 0.5);
    const double rounded = std::floor(target + 0.5 + kBoundaryTolerance);
    return static_cast<int>(std::clamp(rounded, 0.0, static_cast<double>(k)));
}

BandRequirement eg_swing_band_requirement(double d0, int k) {
    BandRequirement out;
    for (int i = kSwingMin; i <= kSwingMax; ++i) {
        out.seat_sequence[static_cast<std::size_t>(i - kSwingMin)] = prescribed_seats(d0, k, i);
    }
    out.required_in_band = out.seat_sequence.back() - out.seat_sequence.front();
    return out;
}

PlanRecord make_plan_record(const Partition& p, const VotePattern& v,
                            std::span<const BandSpec> bands, std::int64_t step) {
    PlanRecord r;
    r.chain_step = step;
    r.shares = district_shares(p, v, ShareOrder::Ascending);
    r.seats = seats(p, v);
    const auto eg = efficiency_gap(p, v, true);
    r.eg_simple = eg.simplified;
    r.eg_full = eg.value;
    r.mean_median = mean_median(r.shares);
    r.cut_edges = p.cut_edge_count();
    r.pop_deviation = population_deviation(p);
    r.band_counts.reserve(bands.size());
    for (const auto& band : bands) {
        r.band_counts.push_back({band, band_count(r.shares, band)});
    }
    return r;
}

}  // namespace recomp
