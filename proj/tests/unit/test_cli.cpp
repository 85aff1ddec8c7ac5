#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "recomp/cli.hpp"
#include "recomp/io.hpp"

using namespace recomp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "recomp");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("recomp_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("cli end to end") {
    TempDir tmp;
    const auto g6 = tmp / "g6";
    REQUIRE(invoke({"synth", "--rows", "6", "--cols", "6", "--model", "gradient", "--p0", "0.3", "--p1", "0.7",
                    "--out", g6})
                .code == 0);
    const auto graph = g6 + "/graph.json";
    REQUIRE(fs::exists(graph));
    CHECK(fs::exists(g6 + "/stamp.json"));

    SUBCASE("neutral steps=0 writes one row") {
        const auto r = invoke({"run-neutral", "--graph", graph, "--k", "3", "--epsilon", "0.05", "--steps", "0",
                               "--out", tmp / "n0"});
        CHECK(r.code == 0);
        CHECK(line_count(tmp / "n0/records.csv") == 2);
    }
    SUBCASE("same manifest twice gives identical records") {
        const auto manifest = tmp / "m.json";
        io::write_text(manifest, io::Json{{"mode", "neutral"},
                                          {"graph", graph},
                                          {"output_dir", tmp / "run_a"},
                                          {"chain", {{"k", 3}, {"epsilon", 0.05}, {"steps", 50}, {"rng_seed", 4},
                                                     {"bands", {{{"y", 5}, {"z", "D0"}}}}}}}
                                     .dump());
        REQUIRE(invoke({"run-neutral", "--manifest", manifest}).code == 0);
        fs::rename(tmp / "run_a", tmp / "run_b");
        REQUIRE(invoke({"run-neutral", "--manifest", manifest}).code == 0);
        CHECK(slurp(tmp / "run_a/records.csv") == slurp(tmp / "run_b/records.csv"));
        CHECK(line_count(tmp / "run_a/records.csv") == 52);

        // The stamp's manifest echo re-runs identically.
        const auto stamp = io::read_json(tmp / "run_a/stamp.json");
        auto echo = stamp.at("manifest");
        echo["output_dir"] = tmp / "run_c";
        io::write_text(tmp / "echo.json", echo.dump());
        REQUIRE(invoke({"run-neutral", "--manifest", tmp / "echo.json"}).code == 0);
        CHECK(slurp(tmp / "run_a/records.csv") == slurp(tmp / "run_c/records.csv"));
    }
    SUBCASE("manifest overrides flags") {
        const auto manifest = tmp / "m2.json";
        io::write_text(manifest, io::Json{{"chain", {{"steps", 3}}}}.dump());
        REQUIRE(invoke({"run-neutral", "--graph", graph, "--k", "3", "--epsilon", "0.05", "--steps", "40",
                        "--manifest", manifest, "--out", tmp / "ov"})
                    .code == 0);
        CHECK(line_count(tmp / "ov/records.csv") == 5);
    }
    SUBCASE("analyze writes summaries whose masses equal the row count") {
        REQUIRE(invoke({"run-neutral", "--graph", graph, "--k", "3", "--epsilon", "0.05", "--steps", "60",
                        "--out", tmp / "n"})
                    .code == 0);
        const auto r = invoke({"analyze", "--records", tmp / "n/records.csv", "--out", tmp / "a"});
        CHECK(r.code == 0);
        for (const char* f : {"summary.json", "boxplot.csv", "bands_hist.csv", "feasibility.csv", "winnow_mm.csv",
                              "scatter.csv"}) {
            CHECK(fs::exists(tmp / (std::string("a/") + f)));
        }
        const auto summary = io::read_json(tmp / "a/summary.json");
        CHECK(summary.at("count") == 61);
        std::int64_t mass = summary.at("mm_histogram").at("underflow").get<std::int64_t>() +
                            summary.at("mm_histogram").at("overflow").get<std::int64_t>();
        for (const auto& c : summary.at("mm_histogram").at("counts")) {
            mass += c.get<std::int64_t>();
        }
        CHECK(mass == 61);
        std::int64_t seat_mass = 0;
        for (const auto& [k, v] : summary.at("seat_histogram").items()) {
            seat_mass += v.get<std::int64_t>();
        }
        CHECK(seat_mass == 61);
    }
    SUBCASE("optimize") {
        const auto r = invoke({"optimize", "--variant", "opt2", "--graph", graph, "--k", "3", "--epsilon", "0.05",
                               "--burnin", "5", "--flips", "200", "--restarts", "2", "--out", tmp / "o"});
        CHECK(r.code == 0);
        CHECK(fs::exists(tmp / "o/trace_1.csv"));
        CHECK(line_count(tmp / "o/trace_0.csv") == 201);
        CHECK(line_count(tmp / "o/records.csv") == 3);
        const auto stamp = io::read_json(tmp / "o/stamp.json");
        for (const auto& restart : stamp.at("restarts")) {
            CHECK(restart.at("certificate_violations") == 0);
        }
    }
    SUBCASE("enumerate") {
        REQUIRE(invoke({"synth", "--rows", "4", "--cols", "4", "--out", tmp / "g4"}).code == 0);
        const auto r = invoke({"enumerate", "--graph", tmp / "g4/graph.json", "--k", "2", "--epsilon", "0.01",
                               "--out", tmp / "e"});
        CHECK(r.code == 0);
        CHECK(io::read_json(tmp / "e/enumerate.json").at("count") == 70);
        const auto big = invoke({"enumerate", "--graph", graph, "--k", "2", "--epsilon", "0.01", "--out", tmp / "e2"});
        CHECK(big.code == 4);
        CHECK(big.err.starts_with("error class=infeasible message="));
    }
    SUBCASE("eg-swing table") {
        const auto r = invoke({"eg-swing", "--d0", "0.496", "--k", "8"});
        CHECK(r.code == 0);
        CHECK(r.out.find("required_in_band,2") != std::string::npos);
    }
}

TEST_CASE("cli exit codes") {
    TempDir tmp;
    SUBCASE("config errors exit 2") {
        CHECK(invoke({"run-neutral", "--graph", tmp / "missing.json", "--k", "2"}).code == 2);
        CHECK(invoke({"frobnicate"}).code == 2);
        CHECK(invoke({"eg-swing", "--k", "8"}).code == 2);
        io::write_text(tmp / "bad.json", R"({"mode": "neutral", "chian": {}})");
        const auto r = invoke({"run-neutral", "--manifest", tmp / "bad.json"});
        CHECK(r.code == 2);
        CHECK(r.err.starts_with("error class=config_error message="));
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    SUBCASE("data errors exit 3") {
        io::write_text(tmp / "g.json", R"({"nodes": [{"id": "a", "population": 1, "dem": 1, "rep": 1}],
                                          "edges": [["a", "Z"]]})");
        const auto r = invoke({"run-neutral", "--graph", tmp / "g.json", "--k", "1", "--out", tmp / "o"});
        CHECK(r.code == 3);
        CHECK(r.err.find("\"Z\"") != std::string::npos);
    }
    SUBCASE("infeasible seeds exit 4") {
        REQUIRE(invoke({"synth", "--rows", "2", "--cols", "2", "--out", tmp / "g"}).code == 0);
        const auto r = invoke({"run-neutral", "--graph", tmp / "g/graph.json", "--k", "17", "--out", tmp / "o"});
        CHECK(r.code == 4);
        CHECK(r.err.starts_with("error class=infeasible"));
    }
}
