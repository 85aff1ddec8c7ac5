#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "recomp/io.hpp"

namespace recomp {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to re-run a mode end to end. Mode-specific settings
/// live in the section named after the mode and use the config document
/// schemas from io.hpp.
///
///   {"mode": "neutral", "graph": "g.json", "votes": ["pres16.json"],
///    "output_dir": "out", "chain": {...}, "emit": ["boxplot", ...]}
struct RunManifest {
    std::string mode;  // synth | neutral | opt1 | opt2 | analyze | enumerate | eg-swing
    std::filesystem::path graph;
    std::vector<std::filesystem::path> votes;
    std::filesystem::path output_dir = ".";
    io::Json chain = io::Json::object();
    io::Json optimize = io::Json::object();
    io::Json synth = io::Json::object();
    io::Json analyze = io::Json::object();
    io::Json enumerate = io::Json::object();
    io::Json eg_swing = io::Json::object();
    std::vector<std::string> emit;

    /// Throws ConfigError on unknown keys or a missing mode.
    static RunManifest from_json(const io::Json& doc);
    io::Json to_json() const;
};

/// Executes the manifest, writing artifacts plus stamp.json under
/// output_dir. Human-readable progress goes to `log`. Throws recomp::Error.
void run(const RunManifest& manifest, std::ostream& log);

/// CLI entry: parses argv, runs, and maps errors onto exit codes
/// (0 ok, 2 config, 3 data, 4 infeasible). Errors print one line
/// "error class=<class> message=<text>" to `err`.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace recomp
