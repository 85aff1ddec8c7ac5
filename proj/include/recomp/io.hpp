#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "recomp/analysis.hpp"
#include "recomp/chain.hpp"
#include "recomp/graph.hpp"
#include "recomp/optimize.hpp"
#include "recomp/synth.hpp"

namespace recomp::io {

using Json = nlohmann::json;

// Graph document:
//   {"nodes": [{"id": "a", "population": 10, "dem": 4, "rep": 6}, ...],
//    "edges": [["a", "b"], ...]}
// Counts must be non-negative JSON integers.
DualGraph graph_from_json(const Json& doc);
Json graph_to_json(const DualGraph& g);
DualGraph load_graph(const std::filesystem::path& path);
void save_graph(const DualGraph& g, const std::filesystem::path& path);

// Vote overlay: {"a": {"dem": 4, "rep": 6}, ...} covering exactly the
// graph's node ids.
VotePattern votes_from_json(const DualGraph& g, const Json& doc);
VotePattern load_votes(const DualGraph& g, const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// Config documents. Unknown keys are rejected so typos surface as errors.
// A band may give z as the string "D0"; the overloads taking d0 (a
// fraction) resolve it to the statewide share in percentage points.
ChainConfig chain_config_from_json(const Json& doc);
ChainConfig chain_config_from_json(const Json& doc, double d0);
Json chain_config_to_json(const ChainConfig& cfg);
OptConfig opt_config_from_json(const Json& doc);
OptConfig opt_config_from_json(const Json& doc, double d0);
Json opt_config_to_json(const OptConfig& cfg);
GridSpec grid_spec_from_json(const Json& doc);
Json grid_spec_to_json(const GridSpec& spec);
BandSpec band_from_json(const Json& doc);
BandSpec band_from_json(const Json& doc, double d0);
Json band_to_json(const BandSpec& band);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

// Records CSV: step, seats, eg_simple, eg_full, mean_median, cut_edges,
// pop_dev, one band_<y>_<z> column per band, then share_1..share_k
// (ascending). An optional leading `tag` column marks the record source.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, std::span<const BandSpec> bands, int k, bool with_tag = false);
    void write(const PlanRecord& record, const std::string& tag = {});

private:
    std::ostream& out_;
    std::vector<BandSpec> bands_;
    int k_;
    bool with_tag_;
};

std::string band_column_name(const BandSpec& band);

struct RecordTable {
    std::vector<BandSpec> bands;
    std::vector<TaggedRecord> records;
};

/// Throws DataError naming the line on malformed input.
RecordTable read_records(std::istream& in);
RecordTable read_records(const std::filesystem::path& path);

// Figure-data CSVs.
//   boxplot.csv      district,p1,p25,p50,p75,p99
//   bands_hist.csv   y,z,band_count,plans
//   feasibility.csv  x,y,z,fraction
//   winnow_mm.csv    x,required,plans,kind,bin_lo,bin_hi,count
//                    (kind "seats": bin_lo = bin_hi = seat count;
//                     kind "mm": mean-median bin [bin_lo, bin_hi))
//   scatter.csv      tag,band_count,seats,plans
std::string boxplot_csv(const EnsembleSummary& s);
std::string bands_hist_csv(const EnsembleSummary& s);
std::string feasibility_csv(const std::vector<std::vector<double>>& matrix,
                            std::span<const double> x_grid, std::span<const double> y_grid,
                            double z);

struct WinnowLevel {
    double x = 0.0;
    int required = 0;
    /// Absent when the level keeps no plans.
    std::optional<EnsembleSummary> summary;
};
std::string winnow_mm_csv(std::span<const WinnowLevel> levels);
std::string scatter_csv(const Scatter& scatter);

Json summary_to_json(const EnsembleSummary& s);

/// Per-restart optimizer trace: attempt,valid,guard_ok,accepted,objective_before,objective
std::string trace_csv(std::span<const TraceEntry> trace);

/// {"node id": district, ...}
Json assignment_to_json(const Partition& p);

}  // namespace recomp::io
