#include "recomp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "recomp/error.hpp"

namespace recomp::io {

namespace {

std::int64_t count_field(const Json& node, const char* key, const std::string& id) {
    if (!node.contains(key)) {
        throw DataError("node \"" + id + "\" is missing attribute \"" + key + "\"");
    }
    const Json& value = node.at(key);
    if (!value.is_number_integer()) {
        throw DataError("node \"" + id + "\" attribute \"" + key + "\" must be an integer");
    }
    const auto n = value.get<std::int64_t>();
    if (n < 0) {
        throw DataError("node \"" + id + "\" attribute \"" + key + "\" is negative");
    }
    return n;
}

std::string node_id(const Json& node, std::size_t position) {
    if (!node.is_object() || !node.contains("id")) {
        throw DataError("node at position " + std::to_string(position) + " has no id");
    }
    const Json& id = node.at("id");
    if (id.is_string()) {
        return id.get<std::string>();
    }
    if (id.is_number_integer()) {
        return std::to_string(id.get<std::int64_t>());
    }
    throw DataError("node at position " + std::to_string(position) + " has a non-string id");
}

std::string edge_end(const Json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<std::int64_t>());
    }
    throw DataError("edge endpoint must be a node id");
}

void reject_unknown(const Json& doc, std::initializer_list<const char*> known, const char* what) {
    if (!doc.is_object()) {
        throw ConfigError(std::string(what) + " must be an object");
    }
    for (const auto& [key, value] : doc.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw ConfigError(std::string("unknown ") + what + " field \"" + key + "\"");
        }
    }
}

template <typename T>
T get_or(const Json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("field \"") + key + "\": " + e.what());
    }
}

double parse_double(std::string_view text, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DataError("line " + std::to_string(line) + ": bad number \"" + std::string(text) + "\"");
    }
    return value;
}

std::int64_t parse_int(std::string_view text, std::size_t line) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DataError("line " + std::to_string(line) + ": bad integer \"" + std::string(text) + "\"");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

}  // namespace

DualGraph graph_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("nodes") || !doc.at("nodes").is_array()) {
        throw DataError("graph document needs a \"nodes\" array");
    }
    if (!doc.contains("edges") || !doc.at("edges").is_array()) {
        throw DataError("graph document needs an \"edges\" array");
    }
    std::vector<NodeRecord> nodes;
    const auto& node_docs = doc.at("nodes");
    nodes.reserve(node_docs.size());
    for (std::size_t i = 0; i < node_docs.size(); ++i) {
        const Json& nd = node_docs[i];
        const std::string id = node_id(nd, i);
        nodes.push_back({id, count_field(nd, "population", id), count_field(nd, "dem", id),
                         count_field(nd, "rep", id)});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Json& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw DataError("edge entries must be [id, id] pairs, got " + e.dump());
        }
        edges.emplace_back(edge_end(e[0]), edge_end(e[1]));
    }
    return DualGraph::build(std::move(nodes), edges);
}

Json graph_to_json(const DualGraph& g) {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
        const auto v = static_cast<NodeIndex>(i);
        nodes.push_back({{"id", g.id(v)},
                         {"population", g.population(v)},
                         {"dem", g.votes().dem(v)},
                         {"rep", g.votes().rep(v)}});
    }
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({g.id(e.u), g.id(e.v)});
    }
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << text;
}

DualGraph load_graph(const std::filesystem::path& path) { return graph_from_json(read_json(path)); }

void save_graph(const DualGraph& g, const std::filesystem::path& path) {
    write_text(path, graph_to_json(g).dump(1) + "\n");
}

VotePattern votes_from_json(const DualGraph& g, const Json& doc) {
    if (!doc.is_object()) {
        throw DataError("vote overlay must map node ids to {dem, rep}");
    }
    std::vector<std::int64_t> dem(g.num_nodes(), 0);
    std::vector<std::int64_t> rep(g.num_nodes(), 0);
    std::vector<char> seen(g.num_nodes(), 0);
    for (const auto& [id, entry] : doc.items()) {
        const NodeIndex v = g.index_of(id);
        if (v < 0) {
            throw DataError("vote overlay references unknown node \"" + id + "\"");
        }
        dem[static_cast<std::size_t>(v)] = count_field(entry, "dem", id);
        rep[static_cast<std::size_t>(v)] = count_field(entry, "rep", id);
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw DataError("vote overlay is missing node \"" + g.id(static_cast<NodeIndex>(i)) + "\"");
        }
    }
    return VotePattern(std::move(dem), std::move(rep));
}

VotePattern load_votes(const DualGraph& g, const std::filesystem::path& path) {
    return votes_from_json(g, read_json(path));
}

BandSpec band_from_json(const Json& doc, double d0) {
    reject_unknown(doc, {"y", "z"}, "band");
    BandSpec band;
    band.y = get_or(doc, "y", 5.0);
    if (doc.contains("z") && doc.at("z").is_string()) {
        if (doc.at("z").get<std::string>() != "D0") {
            throw ConfigError("band z must be a number or \"D0\"");
        }
        if (std::isnan(d0)) {
            throw ConfigError("band z = \"D0\" needs a vote pattern");
        }
        band.z = 100.0 * d0;
    } else {
        band.z = get_or(doc, "z", 50.0);
    }
    return band;
}

BandSpec band_from_json(const Json& doc) { return band_from_json(doc, std::nan("")); }

Json band_to_json(const BandSpec& band) { return {{"y", band.y}, {"z", band.z}}; }

namespace {

TreeMethod tree_method_from(const std::string& s) {
    if (s == "mst") {
        return TreeMethod::RandomWeightMst;
    }
    if (s == "wilson") {
        return TreeMethod::Wilson;
    }
    throw ConfigError("tree_method must be \"mst\" or \"wilson\"");
}

const char* tree_method_name(TreeMethod m) { return m == TreeMethod::Wilson ? "wilson" : "mst"; }

std::vector<BandSpec> bands_from(const Json& doc, double d0) {
    std::vector<BandSpec> bands;
    if (!doc.is_array()) {
        throw ConfigError("bands must be an array");
    }
    for (const auto& b : doc) {
        bands.push_back(band_from_json(b, d0));
    }
    return bands;
}

}  // namespace

ChainConfig chain_config_from_json(const Json& doc, double d0) {
    reject_unknown(doc,
                   {"k", "epsilon", "steps", "proposal", "rng_seed", "bands", "tree_retry_limit",
                    "pair_retry_limit", "tree_method", "seed_attempts"},
                   "chain config");
    ChainConfig c;
    c.k = get_or(doc, "k", c.k);
    c.epsilon = get_or(doc, "epsilon", c.epsilon);
    c.steps = get_or(doc, "steps", c.steps);
    const auto proposal = get_or<std::string>(doc, "proposal", "recom");
    if (proposal == "recom") {
        c.proposal = Proposal::ReCom;
    } else if (proposal == "flip") {
        c.proposal = Proposal::Flip;
    } else {
        throw ConfigError("proposal must be \"recom\" or \"flip\"");
    }
    c.rng_seed = get_or(doc, "rng_seed", c.rng_seed);
    if (doc.contains("bands")) {
        c.bands = bands_from(doc.at("bands"), d0);
    }
    c.tree_retry_limit = get_or(doc, "tree_retry_limit", c.tree_retry_limit);
    c.pair_retry_limit = get_or(doc, "pair_retry_limit", c.pair_retry_limit);
    c.tree_method = tree_method_from(get_or<std::string>(doc, "tree_method", "mst"));
    c.seed_attempts = get_or(doc, "seed_attempts", c.seed_attempts);
    c.validate();
    return c;
}

ChainConfig chain_config_from_json(const Json& doc) { return chain_config_from_json(doc, std::nan("")); }

Json chain_config_to_json(const ChainConfig& c) {
    Json bands = Json::array();
    for (const auto& b : c.bands) {
        bands.push_back(band_to_json(b));
    }
    return {{"k", c.k},
            {"epsilon", c.epsilon},
            {"steps", c.steps},
            {"proposal", c.proposal == Proposal::ReCom ? "recom" : "flip"},
            {"rng_seed", c.rng_seed},
            {"bands", std::move(bands)},
            {"tree_retry_limit", c.tree_retry_limit},
            {"pair_retry_limit", c.pair_retry_limit},
            {"tree_method", tree_method_name(c.tree_method)},
            {"seed_attempts", c.seed_attempts}};
}

OptConfig opt_config_from_json(const Json& doc, double d0) {
    reject_unknown(doc,
                   {"variant", "k", "epsilon", "recom_burnin_steps", "flip_attempts", "band",
                    "cut_edge_factor", "restarts", "rng_seed", "allow_ties", "tree_retry_limit",
                    "pair_retry_limit", "tree_method", "seed_attempts"},
                   "optimizer config");
    OptConfig c;
    const auto variant = get_or<std::string>(doc, "variant", "opt1");
    if (variant == "opt1") {
        c.variant = OptVariant::Opt1;
    } else if (variant == "opt2") {
        c.variant = OptVariant::Opt2;
    } else {
        throw ConfigError("variant must be \"opt1\" or \"opt2\"");
    }
    c.k = get_or(doc, "k", c.k);
    c.epsilon = get_or(doc, "epsilon", c.epsilon);
    c.recom_burnin_steps = get_or(doc, "recom_burnin_steps", c.recom_burnin_steps);
    c.flip_attempts = get_or(doc, "flip_attempts", c.flip_attempts);
    if (doc.contains("band")) {
        c.band = band_from_json(doc.at("band"), d0);
    }
    c.cut_edge_factor = get_or(doc, "cut_edge_factor", c.cut_edge_factor);
    c.restarts = get_or(doc, "restarts", c.restarts);
    c.rng_seed = get_or(doc, "rng_seed", c.rng_seed);
    c.allow_ties = get_or(doc, "allow_ties", c.allow_ties);
    c.tree_retry_limit = get_or(doc, "tree_retry_limit", c.tree_retry_limit);
    c.pair_retry_limit = get_or(doc, "pair_retry_limit", c.pair_retry_limit);
    c.tree_method = tree_method_from(get_or<std::string>(doc, "tree_method", "mst"));
    c.seed_attempts = get_or(doc, "seed_attempts", c.seed_attempts);
    c.validate();
    return c;
}

OptConfig opt_config_from_json(const Json& doc) { return opt_config_from_json(doc, std::nan("")); }

Json opt_config_to_json(const OptConfig& c) {
    return {{"variant", c.variant == OptVariant::Opt1 ? "opt1" : "opt2"},
            {"k", c.k},
            {"epsilon", c.epsilon},
            {"recom_burnin_steps", c.recom_burnin_steps},
            {"flip_attempts", c.flip_attempts},
            {"band", band_to_json(c.band)},
            {"cut_edge_factor", c.cut_edge_factor},
            {"restarts", c.restarts},
            {"rng_seed", c.rng_seed},
            {"allow_ties", c.allow_ties},
            {"tree_retry_limit", c.tree_retry_limit},
            {"pair_retry_limit", c.pair_retry_limit},
            {"tree_method", tree_method_name(c.tree_method)},
            {"seed_attempts", c.seed_attempts}};
}

GridSpec grid_spec_from_json(const Json& doc) {
    reject_unknown(doc, {"rows", "cols", "model", "p0", "p1", "turnout", "population", "share_noise", "rng_seed"},
                   "grid spec");
    GridSpec s;
    s.rows = get_or(doc, "rows", s.rows);
    s.cols = get_or(doc, "cols", s.cols);
    const auto model = get_or<std::string>(doc, "model", "uniform");
    if (model == "uniform") {
        s.votes.kind = VoteModelKind::Uniform;
    } else if (model == "gradient") {
        s.votes.kind = VoteModelKind::Gradient;
    } else if (model == "two-cluster") {
        s.votes.kind = VoteModelKind::TwoCluster;
    } else {
        throw ConfigError("model must be uniform, gradient or two-cluster");
    }
    s.votes.p0 = get_or(doc, "p0", s.votes.p0);
    s.votes.p1 = get_or(doc, "p1", s.votes.p1);
    s.turnout = get_or(doc, "turnout", s.turnout);
    s.population = get_or(doc, "population", s.population);
    s.share_noise = get_or(doc, "share_noise", s.share_noise);
    s.rng_seed = get_or(doc, "rng_seed", s.rng_seed);
    return s;
}

Json grid_spec_to_json(const GridSpec& s) {
    const char* model = s.votes.kind == VoteModelKind::Uniform    ? "uniform"
                        : s.votes.kind == VoteModelKind::Gradient ? "gradient"
                                                                  : "two-cluster";
    return {{"rows", s.rows},       {"cols", s.cols},         {"model", model},
            {"p0", s.votes.p0},     {"p1", s.votes.p1},       {"turnout", s.turnout},
            {"population", s.population}, {"share_noise", s.share_noise}, {"rng_seed", s.rng_seed}};
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string band_column_name(const BandSpec& band) {
    return "band_" + format_double(band.y) + "_" + format_double(band.z);
}

RecordWriter::RecordWriter(std::ostream& out, std::span<const BandSpec> bands, int k, bool with_tag)
    : out_(out), bands_(bands.begin(), bands.end()), k_(k), with_tag_(with_tag) {
    if (with_tag_) {
        out_ << "tag,";
    }
    out_ << "step,seats,eg_simple,eg_full,mean_median,cut_edges,pop_dev";
    for (const auto& b : bands_) {
        out_ << ',' << band_column_name(b);
    }
    for (int i = 1; i <= k_; ++i) {
        out_ << ",share_" << i;
    }
    out_ << '\n';
}

void RecordWriter::write(const PlanRecord& r, const std::string& tag) {
    if (r.k() != k_) {
        throw DataError("record has " + std::to_string(r.k()) + " shares, writer expects " +
                        std::to_string(k_));
    }
    if (with_tag_) {
        out_ << tag << ',';
    }
    out_ << r.chain_step << ',' << r.seats << ',' << format_double(r.eg_simple) << ','
         << format_double(r.eg_full) << ',' << format_double(r.mean_median) << ',' << r.cut_edges
         << ',' << format_double(r.pop_deviation);
    for (const auto& b : bands_) {
        const auto c = r.band_count_for(b);
        out_ << ',' << (c ? *c : band_count(r.shares, b));
    }
    for (const double s : r.shares) {
        out_ << ',' << format_double(s);
    }
    out_ << '\n';
}

RecordTable read_records(std::istream& in) {
    RecordTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("records file is empty");
    }
    const auto header = split_csv(line);
    std::size_t col = 0;
    const bool with_tag = !header.empty() && header[0] == "tag";
    col += with_tag ? 1 : 0;
    static constexpr std::string_view fixed[] = {"step", "seats", "eg_simple", "eg_full",
                                                 "mean_median", "cut_edges", "pop_dev"};
    for (const auto name : fixed) {
        if (col >= header.size() || header[col] != name) {
            throw DataError("records header: expected column \"" + std::string(name) + "\"");
        }
        ++col;
    }
    while (col < header.size() && header[col].starts_with("band_")) {
        const auto body = header[col].substr(5);
        const auto sep = body.find('_');
        if (sep == std::string_view::npos) {
            throw DataError("records header: bad band column \"" + std::string(header[col]) + "\"");
        }
        table.bands.push_back({parse_double(body.substr(0, sep), 1), parse_double(body.substr(sep + 1), 1)});
        ++col;
    }
    const std::size_t share_begin = col;
    for (; col < header.size(); ++col) {
        if (header[col] != "share_" + std::to_string(col - share_begin + 1)) {
            throw DataError("records header: unexpected column \"" + std::string(header[col]) + "\"");
        }
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        }
        TaggedRecord tr;
        std::size_t c = 0;
        if (with_tag) {
            tr.tag = std::string(cells[c++]);
        }
        auto& r = tr.record;
        r.chain_step = parse_int(cells[c++], line_no);
        r.seats = static_cast<int>(parse_int(cells[c++], line_no));
        r.eg_simple = parse_double(cells[c++], line_no);
        r.eg_full = parse_double(cells[c++], line_no);
        r.mean_median = parse_double(cells[c++], line_no);
        r.cut_edges = parse_int(cells[c++], line_no);
        r.pop_deviation = parse_double(cells[c++], line_no);
        for (const auto& b : table.bands) {
            r.band_counts.push_back({b, static_cast<int>(parse_int(cells[c++], line_no))});
        }
        for (; c < cells.size(); ++c) {
            r.shares.push_back(parse_double(cells[c], line_no));
        }
        table.records.push_back(std::move(tr));
    }
    return table;
}

RecordTable read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    return read_records(in);
}

std::string boxplot_csv(const EnsembleSummary& s) {
    std::ostringstream out;
    out << "district,p1,p25,p50,p75,p99\n";
    for (std::size_t i = 0; i < s.share_boxplot.size(); ++i) {
        const auto& b = s.share_boxplot[i];
        out << i + 1 << ',' << format_double(b.p1) << ',' << format_double(b.p25) << ','
            << format_double(b.p50) << ',' << format_double(b.p75) << ',' << format_double(b.p99)
            << '\n';
    }
    return out.str();
}

std::string bands_hist_csv(const EnsembleSummary& s) {
    std::ostringstream out;
    out << "y,z,band_count,plans\n";
    for (const auto& [band, hist] : s.band_count_histograms) {
        for (int c = 0; c <= s.k; ++c) {
            const auto it = hist.find(c);
            out << format_double(band.y) << ',' << format_double(band.z) << ',' << c << ','
                << (it == hist.end() ? 0 : it->second) << '\n';
        }
    }
    return out.str();
}

std::string feasibility_csv(const std::vector<std::vector<double>>& matrix,
                            std::span<const double> x_grid, std::span<const double> y_grid, double z) {
    std::ostringstream out;
    out << "x,y,z,fraction\n";
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        for (std::size_t j = 0; j < y_grid.size(); ++j) {
            out << format_double(x_grid[i]) << ',' << format_double(y_grid[j]) << ','
                << format_double(z) << ',' << format_double(matrix[i][j]) << '\n';
        }
    }
    return out.str();
}

std::string winnow_mm_csv(std::span<const WinnowLevel> levels) {
    std::ostringstream out;
    out << "x,required,plans,kind,bin_lo,bin_hi,count\n";
    for (const auto& level : levels) {
        const std::string prefix = format_double(level.x) + ',' + std::to_string(level.required) + ',';
        if (!level.summary) {
            out << prefix << "0,empty,,,0\n";
            continue;
        }
        const auto& s = *level.summary;
        for (const auto& [seats, n] : s.seat_histogram) {
            out << prefix << s.count << ",seats," << seats << ',' << seats << ',' << n << '\n';
        }
        const auto& h = s.mm_histogram;
        if (h.underflow > 0) {
            out << prefix << s.count << ",mm,-inf," << format_double(h.lo) << ',' << h.underflow << '\n';
        }
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            out << prefix << s.count << ",mm," << format_double(h.bin_lo(i)) << ','
                << format_double(h.bin_lo(i + 1)) << ',' << h.counts[i] << '\n';
        }
        if (h.overflow > 0) {
            out << prefix << s.count << ",mm," << format_double(h.hi) << ",inf," << h.overflow << '\n';
        }
    }
    return out.str();
}

std::string scatter_csv(const Scatter& scatter) {
    std::map<std::tuple<std::string, int, int>, std::int64_t> counts;
    for (const auto& pt : scatter.points) {
        ++counts[{pt.tag, pt.band_count, pt.seats}];
    }
    std::ostringstream out;
    out << "tag,band_count,seats,plans\n";
    for (const auto& [key, n] : counts) {
        out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << n << '\n';
    }
    return out.str();
}

Json summary_to_json(const EnsembleSummary& s) {
    Json seats = Json::object();
    for (const auto& [k, n] : s.seat_histogram) {
        seats[std::to_string(k)] = n;
    }
    Json bands = Json::array();
    for (const auto& [band, hist] : s.band_count_histograms) {
        Json h = Json::object();
        for (const auto& [c, n] : hist) {
            h[std::to_string(c)] = n;
        }
        bands.push_back({{"band", band_to_json(band)}, {"histogram", std::move(h)}});
    }
    Json box = Json::array();
    for (const auto& b : s.share_boxplot) {
        box.push_back({{"p1", b.p1}, {"p25", b.p25}, {"p50", b.p50}, {"p75", b.p75}, {"p99", b.p99}});
    }
    return {{"count", s.count},
            {"k", s.k},
            {"mean_seats", s.mean_seats},
            {"mean_mm", s.mean_mm},
            {"mean_eg", s.mean_eg},
            {"seat_histogram", std::move(seats)},
            {"mm_histogram",
             {{"lo", s.mm_histogram.lo},
              {"hi", s.mm_histogram.hi},
              {"width", s.mm_histogram.width},
              {"counts", s.mm_histogram.counts},
              {"underflow", s.mm_histogram.underflow},
              {"overflow", s.mm_histogram.overflow}}},
            {"band_count_histograms", std::move(bands)},
            {"share_boxplot", std::move(box)}};
}

std::string trace_csv(std::span<const TraceEntry> trace) {
    std::ostringstream out;
    out << "attempt,valid,guard_ok,accepted,objective_before,objective\n";
    for (const auto& e : trace) {
        out << e.attempt << ',' << int{e.valid} << ',' << int{e.guard_ok} << ',' << int{e.accepted}
            << ',' << format_double(e.objective_before) << ',' << format_double(e.objective) << '\n';
    }
    return out.str();
}

Json assignment_to_json(const Partition& p) {
    Json out = Json::object();
    for (std::size_t i = 0; i < p.assignment().size(); ++i) {
        out[p.graph().id(static_cast<NodeIndex>(i))] = p.assignment()[i];
    }
    return out;
}

}  // namespace recomp::io
