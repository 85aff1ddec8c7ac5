#include "recomp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "recomp/enumerate.hpp"
#include "recomp/error.hpp"

namespace recomp {

namespace fs = std::filesystem;
using io::Json;

namespace {

const std::vector<std::string> kModes = {"synth",   "neutral",   "opt1",    "opt2",
                                         "analyze", "enumerate", "eg-swing"};
const std::vector<std::string> kFigures = {"boxplot", "bands_hist", "feasibility", "winnow_mm",
                                           "scatter"};

template <typename T>
T field_or(const Json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("manifest field \"") + key + "\": " + e.what());
    }
}

Json section(const Json& doc, const char* key) {
    if (!doc.contains(key)) {
        return Json::object();
    }
    if (!doc.at(key).is_object()) {
        throw ConfigError(std::string("manifest section \"") + key + "\" must be an object");
    }
    return doc.at(key);
}

struct LoadedData {
    DualGraph graph;
    std::vector<VotePattern> overlays;  // empty: use the graph's own votes
    std::vector<std::string> names;

    const VotePattern& votes(std::size_t i) const {
        return overlays.empty() ? graph.votes() : overlays[i];
    }
    std::size_t pattern_count() const { return overlays.empty() ? 1 : overlays.size(); }
};

LoadedData load_data(const RunManifest& m) {
    if (m.graph.empty()) {
        throw ConfigError("mode \"" + m.mode + "\" needs a graph path");
    }
    if (!fs::exists(m.graph)) {
        throw ConfigError("graph file not found: " + m.graph.string());
    }
    LoadedData data{io::load_graph(m.graph), {}, {}};
    for (const auto& path : m.votes) {
        if (!fs::exists(path)) {
            throw ConfigError("vote file not found: " + path.string());
        }
        data.overlays.push_back(io::load_votes(data.graph, path));
        data.names.push_back(path.stem().string());
    }
    return data;
}

fs::path prepare_output(const RunManifest& m) {
    std::error_code ec;
    fs::create_directories(m.output_dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + m.output_dir.string() + ": " + ec.message());
    }
    return m.output_dir;
}

void write_stamp(const RunManifest& m, const fs::path& dir, std::optional<std::uint64_t> seed,
                 const Json& extra) {
    Json stamp = {{"version", kVersion}, {"mode", m.mode}, {"manifest", m.to_json()}};
    if (seed) {
        stamp["rng_seed"] = *seed;
    }
    for (const auto& [k, v] : extra.items()) {
        stamp[k] = v;
    }
    io::write_text(dir / "stamp.json", stamp.dump(2) + "\n");
}

std::vector<double> grid_or(const Json& doc, const char* key, std::vector<double> fallback) {
    return field_or(doc, key, std::move(fallback));
}

std::vector<double> default_x_grid(int k) {
    std::vector<double> grid;
    for (int i = 0; i <= k; ++i) {
        grid.push_back(static_cast<double>(i) / k);
    }
    return grid;
}

// Figure data and summary for an ensemble (first tag) plus optional extra
// tagged records for the scatter.
void emit_analysis(const RunManifest& m, const fs::path& dir, std::span<const TaggedRecord> tagged,
                   std::optional<double> d0, std::ostream& log) {
    const Json& a = m.analyze;
    static const char* known[] = {"records", "band", "x_grid", "y_grid", "z", "mm_bin_width"};
    for (const auto& [key, value] : a.items()) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known)) {
            throw ConfigError("unknown analyze field \"" + key + "\"");
        }
    }
    if (tagged.empty()) {
        throw DataError("no records to analyze");
    }
    const std::string primary = tagged.front().tag;
    std::vector<PlanRecord> ensemble;
    for (const auto& tr : tagged) {
        if (tr.tag == primary) {
            ensemble.push_back(tr.record);
        }
    }
    const int k = ensemble.front().k();
    const BandSpec band = a.contains("band") ? (d0 ? io::band_from_json(a.at("band"), *d0)
                                                   : io::band_from_json(a.at("band")))
                                             : BandSpec{5.0, 50.0};
    const auto x_grid = grid_or(a, "x_grid", default_x_grid(k));
    std::vector<double> default_y;
    for (int y = 1; y <= 20; ++y) {
        default_y.push_back(y);
    }
    const auto y_grid = grid_or(a, "y_grid", default_y);
    const double z = field_or(a, "z", band.z);
    const double bin = field_or(a, "mm_bin_width", 0.005);

    const auto summary = summarize(ensemble, bin);
    io::write_text(dir / "summary.json", io::summary_to_json(summary).dump(2) + "\n");
    log << "summary: " << summary.count << " plans, mean seats " << summary.mean_seats
        << ", mean MM " << summary.mean_mm << "\n";

    const auto wants = [&](const std::string& fig) {
        return m.emit.empty() || std::find(m.emit.begin(), m.emit.end(), fig) != m.emit.end();
    };
    if (wants("boxplot")) {
        io::write_text(dir / "boxplot.csv", io::boxplot_csv(summary));
    }
    if (wants("bands_hist")) {
        io::write_text(dir / "bands_hist.csv", io::bands_hist_csv(summary));
    }
    if (wants("feasibility")) {
        const auto matrix = compression_feasibility(ensemble, x_grid, y_grid, z);
        io::write_text(dir / "feasibility.csv", io::feasibility_csv(matrix, x_grid, y_grid, z));
    }
    if (wants("winnow_mm")) {
        std::vector<io::WinnowLevel> levels;
        for (const double x : x_grid) {
            const auto kept = winnow(ensemble, CompressionSpec{x, band});
            io::WinnowLevel level{x, required_districts(x, k), std::nullopt};
            if (!kept.empty()) {
                level.summary = summarize(kept, bin);
            }
            levels.push_back(std::move(level));
        }
        io::write_text(dir / "winnow_mm.csv", io::winnow_mm_csv(levels));
    }
    if (wants("scatter")) {
        io::write_text(dir / "scatter.csv", io::scatter_csv(seats_vs_band_scatter(tagged, band)));
    }
}

void run_synth(const RunManifest& m, std::ostream& log) {
    const auto spec = io::grid_spec_from_json(m.synth);
    const auto dir = prepare_output(m);
    const auto g = synth_grid(spec);
    io::save_graph(g, dir / "graph.json");
    write_stamp(m, dir, spec.rng_seed, Json::object());
    log << "wrote " << (dir / "graph.json").string() << " (" << g.num_nodes() << " nodes, "
        << g.num_edges() << " edges, D0 " << statewide_share(g.votes()) << ")\n";
}

void run_neutral(const RunManifest& m, std::ostream& log) {
    const auto data = load_data(m);
    const double d0 = statewide_share(data.votes(0));
    const auto cfg = io::chain_config_from_json(m.chain, d0);
    const auto dir = prepare_output(m);

    std::vector<std::ofstream> files;
    std::vector<io::RecordWriter> writers;
    files.reserve(data.pattern_count());
    writers.reserve(data.pattern_count());
    for (std::size_t i = 0; i < data.pattern_count(); ++i) {
        const auto name = i == 0 ? std::string("records.csv") : "records_" + data.names[i] + ".csv";
        files.emplace_back(dir / name, std::ios::binary);
        if (!files.back()) {
            throw DataError("cannot write " + (dir / name).string());
        }
        writers.emplace_back(files.back(), cfg.bands, cfg.k);
    }
    std::vector<TaggedRecord> kept;
    const bool analyze = !m.emit.empty();
    const auto stats = run_chain(data.graph, data.votes(0), cfg, [&](const PlanRecord& r, const Partition& p) {
        writers[0].write(r);
        if (analyze) {
            kept.push_back({"neutral", r});
        }
        for (std::size_t i = 1; i < writers.size(); ++i) {
            writers[i].write(make_plan_record(p, data.votes(i), cfg.bands, r.chain_step));
        }
    });
    for (auto& f : files) {
        f.flush();
    }
    write_stamp(m, dir, cfg.rng_seed,
                {{"stats",
                  {{"steps", stats.steps},
                   {"accepted", stats.accepted},
                   {"self_loops", stats.self_loops},
                   {"trees_drawn", stats.trees_drawn}}}});
    log << "chain: " << stats.steps << " steps, " << stats.accepted << " accepted, "
        << stats.self_loops << " self-loops\n";
    if (analyze) {
        emit_analysis(m, dir, kept, d0, log);
    }
}

void run_optimize(const RunManifest& m, std::ostream& log) {
    const auto data = load_data(m);
    const double d0 = statewide_share(data.votes(0));
    Json opt = m.optimize;
    if (opt.contains("variant") && opt.at("variant") != m.mode) {
        throw ConfigError("optimizer variant \"" + opt.at("variant").dump() + "\" conflicts with mode \"" +
                          m.mode + "\"");
    }
    opt["variant"] = m.mode;
    const auto cfg = io::opt_config_from_json(opt, d0);
    const auto dir = prepare_output(m);
    const auto runs = run_optimizer(data.graph, data.votes(0), cfg);

    std::ofstream records(dir / "records.csv", std::ios::binary);
    io::RecordWriter writer(records, std::span<const BandSpec>(&cfg.band, 1), cfg.k, true);
    Json plans = Json::array();
    Json summary = Json::array();
    for (const auto& run : runs) {
        writer.write(run.record, m.mode);
        plans.push_back({{"restart", run.restart}, {"seed", run.seed}, {"assignment", io::assignment_to_json(run.plan)}});
        io::write_text(dir / ("trace_" + std::to_string(run.restart) + ".csv"), io::trace_csv(run.trace));
        std::int64_t accepted = 0;
        for (const auto& e : run.trace) {
            accepted += e.accepted ? 1 : 0;
        }
        summary.push_back({{"restart", run.restart},
                           {"band_count", *run.record.band_count_for(cfg.band)},
                           {"seats", run.record.seats},
                           {"baseline_cut_edges", run.baseline_cut_edges},
                           {"cut_edges", run.record.cut_edges},
                           {"accepted", accepted},
                           {"certificate_violations",
                            certificate_violations(run.trace, cfg.variant, cfg.allow_ties)}});
        log << "restart " << run.restart << ": band count " << *run.record.band_count_for(cfg.band)
            << ", seats " << run.record.seats << ", accepted " << accepted << "\n";
    }
    records.flush();
    io::write_text(dir / "plans.json", plans.dump(1) + "\n");
    write_stamp(m, dir, cfg.rng_seed, {{"restarts", summary}});
}

void run_analyze(const RunManifest& m, std::ostream& log) {
    const auto dir = prepare_output(m);
    if (!m.analyze.contains("records") || !m.analyze.at("records").is_array() ||
        m.analyze.at("records").empty()) {
        throw ConfigError("analyze needs a non-empty \"records\" list");
    }
    std::optional<double> d0;
    if (!m.graph.empty()) {
        const auto data = load_data(m);
        d0 = statewide_share(data.votes(0));
    }
    std::vector<TaggedRecord> tagged;
    for (const auto& entry : m.analyze.at("records")) {
        fs::path path;
        std::string tag = "neutral";
        if (entry.is_string()) {
            path = entry.get<std::string>();
        } else if (entry.is_object() && entry.contains("path")) {
            path = entry.at("path").get<std::string>();
            tag = field_or<std::string>(entry, "tag", tag);
        } else {
            throw ConfigError("analyze records entries must be paths or {path, tag}");
        }
        if (!fs::exists(path)) {
            throw ConfigError("records file not found: " + path.string());
        }
        auto table = io::read_records(path);
        for (auto& tr : table.records) {
            if (tr.tag.empty()) {
                tr.tag = tag;
            }
            tagged.push_back(std::move(tr));
        }
    }
    emit_analysis(m, dir, tagged, d0, log);
    write_stamp(m, dir, std::nullopt, Json::object());
}

void run_enumerate(const RunManifest& m, std::ostream& log) {
    const auto data = load_data(m);
    const Json& e = m.enumerate;
    const int k = field_or(e, "k", 2);
    const double epsilon = field_or(e, "epsilon", 0.01);
    EnumerationBudget budget;
    budget.max_nodes = field_or<std::size_t>(e, "max_nodes", budget.max_nodes);
    budget.max_partitions = field_or<std::size_t>(e, "max_partitions", budget.max_partitions);
    const auto dir = prepare_output(m);
    const auto plans = enumerate_partitions(data.graph, data.votes(0), k, epsilon, budget);
    Json out = Json::array();
    for (const auto& p : plans) {
        Json districts = Json::array();
        for (const auto& district : canonical_key(p)) {
            Json ids = Json::array();
            for (const NodeIndex v : district) {
                ids.push_back(data.graph.id(v));
            }
            districts.push_back(std::move(ids));
        }
        out.push_back(std::move(districts));
    }
    io::write_text(dir / "enumerate.json",
                   Json{{"k", k}, {"epsilon", epsilon}, {"count", plans.size()}, {"plans", out}}.dump(1) + "\n");
    write_stamp(m, dir, std::nullopt, {{"count", plans.size()}});
    log << plans.size() << " plans\n";
}

void run_eg_swing(const RunManifest& m, std::ostream& log) {
    const Json& e = m.eg_swing;
    if (!e.contains("d0") || !e.contains("k")) {
        throw ConfigError("eg-swing needs d0 and k");
    }
    const double d0 = field_or(e, "d0", 0.5);
    const int k = field_or(e, "k", 1);
    if (!(d0 >= 0.0 && d0 <= 1.0) || k < 1) {
        throw ConfigError("eg-swing needs d0 in [0, 1] and k >= 1");
    }
    const auto req = eg_swing_band_requirement(d0, k);
    std::ostringstream table;
    table << "swing,d0,target_seats,prescribed_seats\n";
    for (int i = kSwingMin; i <= kSwingMax; ++i) {
        const double shifted = d0 + i / 100.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f,%.4f", shifted, k * (2.0 * shifted - 0.5));
        table << i << ',' << buf << ','
              << req.seat_sequence[static_cast<std::size_t>(i - kSwingMin)] << '\n';
    }
    log << table.str() << "required_in_band," << req.required_in_band << '\n';
    if (e.contains("write") ? e.at("write").get<bool>() : false) {
        const auto dir = prepare_output(m);
        io::write_text(dir / "eg_swing.csv", table.str());
    }
}

}  // namespace

RunManifest RunManifest::from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("manifest must be an object");
    }
    static const char* known[] = {"mode",    "graph",   "votes",   "output_dir", "chain",
                                  "optimize", "synth",  "analyze", "enumerate",  "eg_swing",
                                  "emit"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known)) {
            throw ConfigError("unknown manifest field \"" + key + "\"");
        }
    }
    RunManifest m;
    m.mode = field_or<std::string>(doc, "mode", "");
    if (std::find(kModes.begin(), kModes.end(), m.mode) == kModes.end()) {
        throw ConfigError("manifest mode must be one of synth, neutral, opt1, opt2, analyze, "
                          "enumerate, eg-swing; got \"" + m.mode + "\"");
    }
    m.graph = field_or<std::string>(doc, "graph", "");
    if (doc.contains("votes")) {
        const Json& v = doc.at("votes");
        if (v.is_string()) {
            m.votes.emplace_back(v.get<std::string>());
        } else {
            for (const auto& p : field_or<std::vector<std::string>>(doc, "votes", {})) {
                m.votes.emplace_back(p);
            }
        }
    }
    m.output_dir = field_or<std::string>(doc, "output_dir", ".");
    m.chain = section(doc, "chain");
    m.optimize = section(doc, "optimize");
    m.synth = section(doc, "synth");
    m.analyze = section(doc, "analyze");
    m.enumerate = section(doc, "enumerate");
    m.eg_swing = section(doc, "eg_swing");
    m.emit = field_or<std::vector<std::string>>(doc, "emit", {});
    for (const auto& fig : m.emit) {
        if (std::find(kFigures.begin(), kFigures.end(), fig) == kFigures.end()) {
            throw ConfigError("unknown figure \"" + fig + "\" in emit");
        }
    }
    return m;
}

Json RunManifest::to_json() const {
    Json votes_json = Json::array();
    for (const auto& v : votes) {
        votes_json.push_back(v.string());
    }
    return {{"mode", mode},
            {"graph", graph.string()},
            {"votes", std::move(votes_json)},
            {"output_dir", output_dir.string()},
            {"chain", chain},
            {"optimize", optimize},
            {"synth", synth},
            {"analyze", analyze},
            {"enumerate", enumerate},
            {"eg_swing", eg_swing},
            {"emit", emit}};
}

void run(const RunManifest& m, std::ostream& log) {
    if (m.mode == "synth") {
        run_synth(m, log);
    } else if (m.mode == "neutral") {
        run_neutral(m, log);
    } else if (m.mode == "opt1" || m.mode == "opt2") {
        run_optimize(m, log);
    } else if (m.mode == "analyze") {
        run_analyze(m, log);
    } else if (m.mode == "enumerate") {
        run_enumerate(m, log);
    } else if (m.mode == "eg-swing") {
        run_eg_swing(m, log);
    } else {
        throw ConfigError("unknown mode \"" + m.mode + "\"");
    }
}

namespace {

// "5,50" or "5,D0" -> band document.
Json band_flag(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("band flag must look like Y,Z (e.g. 5,50 or 5,D0): " + text);
    }
    const std::string y = text.substr(0, comma);
    const std::string z = text.substr(comma + 1);
    try {
        Json band = {{"y", std::stod(y)}};
        if (z == "D0") {
            band["z"] = "D0";
        } else {
            band["z"] = std::stod(z);
        }
        return band;
    } catch (const std::logic_error&) {
        throw ConfigError("band flag must look like Y,Z: " + text);
    }
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Redistricting ensembles, competitiveness optimizers and vote-band metrics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Json flags = Json::object();
    std::string manifest_path;
    const auto add_manifest = [&](CLI::App* sub) {
        sub->add_option("--manifest", manifest_path, "JSON run manifest; its fields override flags");
    };
    // Flag values are collected into a manifest document, then the manifest
    // file (if any) is merge-patched over it.
    std::string graph, out_dir;
    std::vector<std::string> votes, bands, records_in, emit;
    std::optional<int> k, rows, cols, restarts, max_nodes;
    std::optional<double> epsilon, p0, p1, d0, factor, z, mm_bin;
    std::optional<std::int64_t> steps, burnin, flips, turnout, population;
    std::optional<std::uint64_t> seed;
    std::optional<double> noise;
    std::string proposal, model, tree_method;
    std::vector<double> x_grid, y_grid;
    bool allow_ties = false;
    bool write_table = false;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic grid graph document");
    synth->add_option("--rows", rows);
    synth->add_option("--cols", cols);
    synth->add_option("--model", model, "uniform | gradient | two-cluster");
    synth->add_option("--p0", p0);
    synth->add_option("--p1", p1);
    synth->add_option("--turnout", turnout);
    synth->add_option("--population", population);
    synth->add_option("--noise", noise, "per-node share noise (std dev)");
    synth->add_option("--seed", seed);
    synth->add_option("--out", out_dir);
    add_manifest(synth);

    auto* neutral = app.add_subcommand("run-neutral", "Run a neutral ReCom or Flip ensemble");
    auto* optimize = app.add_subcommand("optimize", "Run the Opt1 or Opt2 hill climber");
    std::string variant;
    for (auto* sub : {neutral, optimize}) {
        sub->add_option("--graph", graph);
        sub->add_option("--votes", votes, "vote overlay document(s)");
        sub->add_option("--k", k);
        sub->add_option("--epsilon", epsilon);
        sub->add_option("--seed", seed);
        sub->add_option("--tree-method", tree_method, "mst | wilson");
        sub->add_option("--out", out_dir);
        add_manifest(sub);
    }
    neutral->add_option("--steps", steps);
    neutral->add_option("--proposal", proposal, "recom | flip");
    neutral->add_option("--band", bands, "band Y,Z to record (repeatable; Z may be D0)");
    neutral->add_option("--emit", emit, "figure CSVs to write after the run");
    optimize->add_option("--variant", variant, "opt1 | opt2")->default_val("opt1");
    optimize->add_option("--burnin", burnin);
    optimize->add_option("--flips", flips);
    optimize->add_option("--restarts", restarts);
    optimize->add_option("--factor", factor, "cut-edge factor");
    optimize->add_flag("--allow-ties", allow_ties);
    optimize->add_option("--band", bands, "target band Y,Z");

    auto* analyze = app.add_subcommand("analyze", "Summaries and figure data from record files");
    analyze->add_option("--records", records_in, "records CSV, optionally PATH:TAG (repeatable)");
    analyze->add_option("--graph", graph, "graph (resolves D0 bands)");
    analyze->add_option("--votes", votes);
    analyze->add_option("--band", bands, "compression band Y,Z");
    analyze->add_option("--x-grid", x_grid);
    analyze->add_option("--y-grid", y_grid);
    analyze->add_option("--z", z, "feasibility target");
    analyze->add_option("--mm-bin", mm_bin);
    analyze->add_option("--emit", emit);
    analyze->add_option("--out", out_dir);
    add_manifest(analyze);

    auto* enumerate = app.add_subcommand("enumerate", "Exhaustively list balanced contiguous plans");
    enumerate->add_option("--graph", graph);
    enumerate->add_option("--k", k);
    enumerate->add_option("--epsilon", epsilon);
    enumerate->add_option("--max-nodes", max_nodes);
    enumerate->add_option("--out", out_dir);
    add_manifest(enumerate);

    auto* eg = app.add_subcommand("eg-swing", "Print the EG/swing seat prescription for D0 and k");
    eg->add_option("--d0", d0, "statewide Democratic share (fraction)");
    eg->add_option("--k", k);
    eg->add_flag("--write", write_table, "also write eg_swing.csv under --out");
    eg->add_option("--out", out_dir);
    add_manifest(eg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto set = [&](Json& doc, const char* key, const auto& opt) {
            if (opt) {
                doc[key] = *opt;
            }
        };
        if (!graph.empty()) {
            flags["graph"] = graph;
        }
        if (!votes.empty()) {
            flags["votes"] = votes;
        }
        if (!out_dir.empty()) {
            flags["output_dir"] = out_dir;
        }
        if (!emit.empty()) {
            flags["emit"] = emit;
        }
        if (synth->parsed()) {
            flags["mode"] = "synth";
            Json s = Json::object();
            set(s, "rows", rows);
            set(s, "cols", cols);
            if (!model.empty()) {
                s["model"] = model;
            }
            set(s, "p0", p0);
            set(s, "p1", p1);
            set(s, "turnout", turnout);
            set(s, "population", population);
            set(s, "share_noise", noise);
            set(s, "rng_seed", seed);
            flags["synth"] = s;
        } else if (neutral->parsed()) {
            flags["mode"] = "neutral";
            Json c = Json::object();
            set(c, "k", k);
            set(c, "epsilon", epsilon);
            set(c, "steps", steps);
            set(c, "rng_seed", seed);
            if (!proposal.empty()) {
                c["proposal"] = proposal;
            }
            if (!tree_method.empty()) {
                c["tree_method"] = tree_method;
            }
            if (!bands.empty()) {
                c["bands"] = Json::array();
                for (const auto& b : bands) {
                    c["bands"].push_back(band_flag(b));
                }
            }
            flags["chain"] = c;
        } else if (optimize->parsed()) {
            flags["mode"] = variant;
            Json o = Json::object();
            set(o, "k", k);
            set(o, "epsilon", epsilon);
            set(o, "rng_seed", seed);
            set(o, "recom_burnin_steps", burnin);
            set(o, "flip_attempts", flips);
            set(o, "restarts", restarts);
            set(o, "cut_edge_factor", factor);
            if (allow_ties) {
                o["allow_ties"] = true;
            }
            if (!tree_method.empty()) {
                o["tree_method"] = tree_method;
            }
            if (!bands.empty()) {
                o["band"] = band_flag(bands.back());
            }
            flags["optimize"] = o;
        } else if (analyze->parsed()) {
            flags["mode"] = "analyze";
            Json a = Json::object();
            if (!records_in.empty()) {
                a["records"] = Json::array();
                for (const auto& r : records_in) {
                    const auto colon = r.rfind(':');
                    if (colon != std::string::npos && colon > 0) {
                        a["records"].push_back({{"path", r.substr(0, colon)}, {"tag", r.substr(colon + 1)}});
                    } else {
                        a["records"].push_back({{"path", r}});
                    }
                }
            }
            if (!bands.empty()) {
                a["band"] = band_flag(bands.back());
            }
            if (!x_grid.empty()) {
                a["x_grid"] = x_grid;
            }
            if (!y_grid.empty()) {
                a["y_grid"] = y_grid;
            }
            set(a, "z", z);
            set(a, "mm_bin_width", mm_bin);
            flags["analyze"] = a;
        } else if (enumerate->parsed()) {
            flags["mode"] = "enumerate";
            Json e = Json::object();
            set(e, "k", k);
            set(e, "epsilon", epsilon);
            set(e, "max_nodes", max_nodes);
            flags["enumerate"] = e;
        } else if (eg->parsed()) {
            flags["mode"] = "eg-swing";
            Json e = Json::object();
            set(e, "d0", d0);
            set(e, "k", k);
            if (write_table) {
                e["write"] = true;
            }
            flags["eg_swing"] = e;
        }
        const std::string flag_mode = flags["mode"];
        if (!manifest_path.empty()) {
            Json doc = io::read_json(manifest_path);
            if (doc.contains("mode") && doc.at("mode") != flag_mode &&
                !(optimize->parsed() && (doc.at("mode") == "opt1" || doc.at("mode") == "opt2"))) {
                throw ConfigError("manifest mode \"" + doc.at("mode").get<std::string>() +
                                  "\" does not match the subcommand");
            }
            flags.merge_patch(doc);
        }
        run(RunManifest::from_json(flags), out);
        return 0;
    } catch (const Error& e) {
        err << "error class=" << e.class_name() << " message=" << e.what() << '\n';
        return e.exit_code();
    } catch (const Json::exception& e) {
        err << "error class=config_error message=" << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error class=internal message=" << e.what() << '\n';
        return 1;
    }
}

}  // namespace recomp
