#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recomp/graph.hpp"

namespace recomp {

/// Band of half-width y around target z, both in percentage points.
struct BandSpec {
    double y = 5.0;
    double z = 50.0;

    friend bool operator==(const BandSpec&, const BandSpec&) = default;
};

/// At least a fraction x of the districts must sit in `band`.
struct CompressionSpec {
    double x = 0.0;
    BandSpec band;
};

struct BandCount {
    BandSpec band;
    int count = 0;
};

/// Per-plan metric summary emitted by chains and optimizers.
struct PlanRecord {
    std::int64_t chain_step = 0;
    std::vector<double> shares;  // ascending
    int seats = 0;
    double eg_simple = 0.0;
    double eg_full = 0.0;
    double mean_median = 0.0;
    std::int64_t cut_edges = 0;
    double pop_deviation = 0.0;
    std::vector<BandCount> band_counts;

    int k() const { return static_cast<int>(shares.size()); }
    std::optional<int> band_count_for(const BandSpec& band) const;
};

/// Slack absorbed when comparing decimal thresholds against shares that
/// went through binary floating point (e.g. 100 * 0.55 - 50 > 5).
inline constexpr double kBoundaryTolerance = 1e-9;

/// Statewide Democratic two-party share. Throws DataError when there are no
/// two-party votes.
double statewide_share(const VotePattern& v);

/// Districts with share strictly above one half.
int seats(std::span<const double> shares);
/// Districts with dem > rep, from exact tallies.
int seats(const Partition& p, const VotePattern& v);

/// Closed interval |100 * share - z| <= y.
bool in_band(double share, const BandSpec& band);
int band_count(std::span<const double> shares, const BandSpec& band);
/// Districts required for x-compression on k districts: ceil(x * k).
int required_districts(double x, int k);
bool is_compressed(std::span<const double> shares, const CompressionSpec& spec);
std::vector<int> sliding_band_curve(std::span<const double> shares, double z,
                                    std::span<const double> y_grid);

/// median - mean of the shares.
double mean_median(std::span<const double> shares);

// Efficiency gap, D0 as a fraction, with turnout noise
//   N = s(s - 1)(1 - rho) / (s(1 - rho) + rho),   s = S / k,
// rho = mean two-party turnout in Democratic-won districts over the mean in
// Republican-won districts. The sign convention is the formula as written.
double efficiency_gap_simplified(double d0, int seats, int k);
double turnout_noise(double seat_share, double rho);

struct EfficiencyGap {
    double value = 0.0;
    double simplified = 0.0;
    double rho = 1.0;
    /// Set when noise was requested but one party won no district, so the
    /// simplified value was returned.
    bool noise_fallback = false;
};

EfficiencyGap efficiency_gap(const Partition& p, const VotePattern& v, bool include_noise);

/// Shifts every share by i percentage points, clamped to [0, 1].
std::vector<double> uniform_swing(std::span<const double> shares, double i);
double swing_share(double share, double i);
/// Seats after a uniform swing of i points. A swung share within
/// kBoundaryTolerance of one half counts as a tie (not a seat).
int swung_seats(std::span<const double> shares, double i);

inline constexpr int kSwingMin = -5;
inline constexpr int kSwingMax = 5;
inline constexpr std::size_t kSwingCount = 11;

using SwingProfile = std::array<double, kSwingCount>;

/// Simplified EG at each uniform swing -5..+5 with seats recomputed from the
/// swung shares and D0 shifted alongside.
SwingProfile eg_swing_profile(std::span<const double> shares, double d0);
/// Same from a plan; seats under swing are decided on exact integer tallies.
/// With include_noise the noise term uses the unswung district turnouts.
SwingProfile eg_swing_profile(const Partition& p, const VotePattern& v, bool include_noise = false);
std::array<int, kSwingCount> swing_seat_sequence(std::span<const double> shares);

/// Seats closest to k(2(D0 + i/100) - 1/2), rounded half up, clamped to [0, k].
int prescribed_seats(double d0, int k, int i);

struct BandRequirement {
    int required_in_band = 0;
    std::array<int, kSwingCount> seat_sequence{};
};

BandRequirement eg_swing_band_requirement(double d0, int k);

/// Full metric record for a plan.
PlanRecord make_plan_record(const Partition& p, const VotePattern& v,
                            std::span<const BandSpec> bands, std::int64_t step);

}  // namespace recomp
