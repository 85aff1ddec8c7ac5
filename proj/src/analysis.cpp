#include "recomp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "recomp/error.hpp"

namespace recomp {

BinnedHistogram::BinnedHistogram(double lo_, double hi_, double width_)
    : lo(lo_), hi(hi_), width(width_) {
    if (!(width > 0.0) || !(hi > lo)) {
        throw ConfigError("histogram needs width > 0 and hi > lo");
    }
    counts.assign(static_cast<std::size_t>(std::llround((hi - lo) / width)), 0);
}

void BinnedHistogram::add(double value) {
    if (value < lo) {
        ++underflow;
        return;
    }
    const auto bin = static_cast<std::size_t>(std::floor((value - lo) / width));
    if (value >= hi || bin >= counts.size()) {
        ++overflow;
        return;
    }
    ++counts[bin];
}

std::int64_t BinnedHistogram::mass() const {
    std::int64_t total = underflow + overflow;
    for (const auto c : counts) {
        total += c;
    }
    return total;
}

double nearest_rank(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw DataError("percentile of an empty sample");
    }
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n - kBoundaryTolerance));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

SummaryAccumulator::SummaryAccumulator(double mm_bin_width, double mm_lo, double mm_hi)
    : mm_(mm_lo, mm_hi, mm_bin_width) {}

void SummaryAccumulator::add(const PlanRecord& record) {
    if (count_ == 0) {
        k_ = record.k();
        columns_.assign(static_cast<std::size_t>(k_), {});
        for (const auto& bc : record.band_counts) {
            bands_.push_back({bc.band, {}});
        }
    } else if (record.k() != k_) {
        throw DataError("records mix district counts " + std::to_string(k_) + " and " +
                        std::to_string(record.k()));
    }
    ++count_;
    seat_sum_ += record.seats;
    mm_sum_ += record.mean_median;
    eg_sum_ += record.eg_simple;
    ++seats_[record.seats];
    mm_.add(record.mean_median);
    for (auto& [band, hist] : bands_) {
        const auto c = record.band_count_for(band);
        ++hist[c ? *c : band_count(record.shares, band)];
    }
    std::vector<double> sorted = record.shares;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        columns_[i].push_back(sorted[i]);
    }
}

void SummaryAccumulator::merge(const SummaryAccumulator& other) {
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    if (other.k_ != k_) {
        throw DataError("cannot merge summaries with different district counts");
    }
    if (other.mm_.counts.size() != mm_.counts.size() || other.mm_.lo != mm_.lo) {
        throw ConfigError("cannot merge summaries with different mean-median bins");
    }
    count_ += other.count_;
    seat_sum_ += other.seat_sum_;
    mm_sum_ += other.mm_sum_;
    eg_sum_ += other.eg_sum_;
    for (const auto& [s, c] : other.seats_) {
        seats_[s] += c;
    }
    for (std::size_t i = 0; i < mm_.counts.size(); ++i) {
        mm_.counts[i] += other.mm_.counts[i];
    }
    mm_.underflow += other.mm_.underflow;
    mm_.overflow += other.mm_.overflow;
    for (auto& [band, hist] : bands_) {
        for (const auto& [other_band, other_hist] : other.bands_) {
            if (other_band == band) {
                for (const auto& [c, n] : other_hist) {
                    hist[c] += n;
                }
            }
        }
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        columns_[i].insert(columns_[i].end(), other.columns_[i].begin(), other.columns_[i].end());
    }
}

EnsembleSummary SummaryAccumulator::finish() const {
    if (count_ == 0) {
        throw DataError("cannot summarize an empty ensemble");
    }
    EnsembleSummary s;
    s.count = count_;
    s.k = k_;
    const auto n = static_cast<double>(count_);
    s.mean_seats = seat_sum_ / n;
    s.mean_mm = mm_sum_ / n;
    s.mean_eg = eg_sum_ / n;
    s.seat_histogram = seats_;
    s.mm_histogram = mm_;
    s.band_count_histograms = bands_;
    s.share_boxplot.reserve(columns_.size());
    for (const auto& column : columns_) {
        std::vector<double> sorted = column;
        std::sort(sorted.begin(), sorted.end());
        s.share_boxplot.push_back({nearest_rank(sorted, 1), nearest_rank(sorted, 25),
                                   nearest_rank(sorted, 50), nearest_rank(sorted, 75),
                                   nearest_rank(sorted, 99)});
    }
    return s;
}

bool is_compressed(const PlanRecord& record, const CompressionSpec& spec) {
    const auto stored = record.band_count_for(spec.band);
    const int count = stored ? *stored : band_count(record.shares, spec.band);
    return count >= required_districts(spec.x, record.k());
}

std::vector<PlanRecord> winnow(std::span<const PlanRecord> records, const CompressionSpec& spec) {
    std::vector<PlanRecord> out;
    for (const auto& r : records) {
        if (is_compressed(r, spec)) {
            out.push_back(r);
        }
    }
    return out;
}

EnsembleSummary summarize(std::span<const PlanRecord> records, double mm_bin_width) {
    SummaryAccumulator acc(mm_bin_width);
    for (const auto& r : records) {
        acc.add(r);
    }
    return acc.finish();
}

std::vector<std::vector<double>> compression_feasibility(std::span<const PlanRecord> records,
                                                         std::span<const double> x_grid,
                                                         std::span<const double> y_grid, double z) {
    std::vector<std::vector<double>> matrix(x_grid.size(), std::vector<double>(y_grid.size(), 0.0));
    if (records.empty()) {
        return matrix;
    }
    // Band counts per (record, y) computed once, then thresholded per x.
    std::vector<std::vector<int>> counts(y_grid.size());
    for (std::size_t j = 0; j < y_grid.size(); ++j) {
        counts[j].reserve(records.size());
        for (const auto& r : records) {
            counts[j].push_back(band_count(r.shares, BandSpec{y_grid[j], z}));
        }
    }
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        for (std::size_t j = 0; j < y_grid.size(); ++j) {
            std::int64_t hits = 0;
            for (std::size_t r = 0; r < records.size(); ++r) {
                if (counts[j][r] >= required_districts(x_grid[i], records[r].k())) {
                    ++hits;
                }
            }
            matrix[i][j] = static_cast<double>(hits) / static_cast<double>(records.size());
        }
    }
    return matrix;
}

Scatter seats_vs_band_scatter(std::span<const TaggedRecord> records, const BandSpec& band) {
    Scatter out;
    out.points.reserve(records.size());
    for (const auto& tr : records) {
        const auto stored = tr.record.band_count_for(band);
        ScatterPoint pt{stored ? *stored : band_count(tr.record.shares, band), tr.record.seats, tr.tag};
        auto [it, inserted] = out.seat_ranges.try_emplace({pt.tag, pt.band_count},
                                                          SeatRange{pt.seats, pt.seats});
        if (!inserted) {
            it->second.min_seats = std::min(it->second.min_seats, pt.seats);
            it->second.max_seats = std::max(it->second.max_seats, pt.seats);
        }
        out.points.push_back(std::move(pt));
    }
    return out;
}

std::vector<std::pair<int, int>> novel_outcomes(const Scatter& scatter, const std::string& tag,
                                                const std::string& reference_tag) {
    std::set<std::pair<int, int>> reference;
    std::set<std::pair<int, int>> candidate;
    for (const auto& pt : scatter.points) {
        if (pt.tag == reference_tag) {
            reference.insert({pt.band_count, pt.seats});
        } else if (pt.tag == tag) {
            candidate.insert({pt.band_count, pt.seats});
        }
    }
    std::vector<std::pair<int, int>> out;
    std::set_difference(candidate.begin(), candidate.end(), reference.begin(), reference.end(),
                        std::back_inserter(out));
    return out;
}

}  // namespace recomp
