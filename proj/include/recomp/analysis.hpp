#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recomp/metrics.hpp"

namespace recomp {

/// Nearest-rank percentiles of one district position across an ensemble.
struct BoxplotRow {
    double p1 = 0.0;
    double p25 = 0.0;
    double p50 = 0.0;
    double p75 = 0.0;
    double p99 = 0.0;
};

/// Fixed-width histogram with explicit under/overflow bins so the total
/// mass always equals the number of samples.
struct BinnedHistogram {
    double lo = -0.15;
    double hi = 0.15;
    double width = 0.005;
    std::vector<std::int64_t> counts;
    std::int64_t underflow = 0;
    std::int64_t overflow = 0;

    BinnedHistogram() = default;
    BinnedHistogram(double lo, double hi, double width);
    void add(double value);
    std::int64_t mass() const;
    double bin_lo(std::size_t i) const { return lo + width * static_cast<double>(i); }
};

struct EnsembleSummary {
    std::int64_t count = 0;
    int k = 0;
    double mean_seats = 0.0;
    double mean_mm = 0.0;
    double mean_eg = 0.0;
    std::map<int, std::int64_t> seat_histogram;
    BinnedHistogram mm_histogram;
    /// Histogram of band counts, one per band present on the records.
    std::vector<std::pair<BandSpec, std::map<int, std::int64_t>>> band_count_histograms;
    /// Indexed by ascending district position.
    std::vector<BoxplotRow> share_boxplot;
};

/// Nearest-rank percentile of sorted values: element ceil(q/100 * n), 1-based.
double nearest_rank(std::span<const double> sorted, double q);

/// Streaming, mergeable summary. Every field but the boxplot is constant
/// memory; the boxplot keeps the per-position share columns.
class SummaryAccumulator {
public:
    explicit SummaryAccumulator(double mm_bin_width = 0.005, double mm_lo = -0.15,
                                double mm_hi = 0.15);

    void add(const PlanRecord& record);
    void merge(const SummaryAccumulator& other);
    std::int64_t count() const { return count_; }
    /// Throws DataError on an empty ensemble.
    EnsembleSummary finish() const;

private:
    std::int64_t count_ = 0;
    int k_ = 0;
    double seat_sum_ = 0.0;
    double mm_sum_ = 0.0;
    double eg_sum_ = 0.0;
    std::map<int, std::int64_t> seats_;
    BinnedHistogram mm_;
    std::vector<std::pair<BandSpec, std::map<int, std::int64_t>>> bands_;
    std::vector<std::vector<double>> columns_;
};

bool is_compressed(const PlanRecord& record, const CompressionSpec& spec);

/// Records satisfying the compression rule, order preserved.
std::vector<PlanRecord> winnow(std::span<const PlanRecord> records, const CompressionSpec& spec);
EnsembleSummary summarize(std::span<const PlanRecord> records, double mm_bin_width = 0.005);

/// Fraction of records that are (x, y, z)-compressed; rows follow x_grid,
/// columns follow y_grid.
std::vector<std::vector<double>> compression_feasibility(std::span<const PlanRecord> records,
                                                         std::span<const double> x_grid,
                                                         std::span<const double> y_grid, double z);

struct TaggedRecord {
    std::string tag;
    PlanRecord record;
};

struct ScatterPoint {
    int band_count = 0;
    int seats = 0;
    std::string tag;

    friend bool operator==(const ScatterPoint&, const ScatterPoint&) = default;
};

struct SeatRange {
    int min_seats = 0;
    int max_seats = 0;
};

struct Scatter {
    std::vector<ScatterPoint> points;
    /// Keyed by (tag, band count).
    std::map<std::pair<std::string, int>, SeatRange> seat_ranges;
};

Scatter seats_vs_band_scatter(std::span<const TaggedRecord> records, const BandSpec& band);

/// (band count, seats) pairs seen under `tag` that never occur under
/// `reference_tag`.
std::vector<std::pair<int, int>> novel_outcomes(const Scatter& scatter, const std::string& tag,
                                                const std::string& reference_tag);

}  // namespace recomp
