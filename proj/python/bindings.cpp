#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "recomp/chain.hpp"
#include "recomp/cli.hpp"
#include "recomp/enumerate.hpp"
#include "recomp/error.hpp"
#include "recomp/io.hpp"
#include "recomp/metrics.hpp"
#include "recomp/optimize.hpp"
#include "recomp/synth.hpp"

namespace py = pybind11;
using namespace recomp;

namespace {

DualGraph graph_from_text(const std::string& text) { return io::graph_from_json(io::Json::parse(text)); }

py::dict record_to_dict(const PlanRecord& r) {
    py::dict d;
    d["step"] = r.chain_step;
    d["shares"] = r.shares;
    d["seats"] = r.seats;
    d["eg_simple"] = r.eg_simple;
    d["eg_full"] = r.eg_full;
    d["mean_median"] = r.mean_median;
    d["cut_edges"] = r.cut_edges;
    d["pop_deviation"] = r.pop_deviation;
    py::list bands;
    for (const auto& bc : r.band_counts) {
        bands.append(py::make_tuple(bc.band.y, bc.band.z, bc.count));
    }
    d["band_counts"] = bands;
    return d;
}

}  // namespace

PYBIND11_MODULE(_recomp, m) {
    m.doc() = "Redistricting ensembles and vote-band metrics";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

    m.def(
        "synth_grid",
        [](const std::string& spec_json) {
            return io::graph_to_json(synth_grid(io::grid_spec_from_json(io::Json::parse(spec_json)))).dump();
        },
        py::arg("spec_json"), "Grid graph document (JSON text) from a grid spec document.");

    m.def("seats", [](const std::vector<double>& s) { return seats(s); });
    m.def("band_count", [](const std::vector<double>& s, double y, double z) { return band_count(s, {y, z}); },
          py::arg("shares"), py::arg("y") = 5.0, py::arg("z") = 50.0);
    m.def("mean_median", [](const std::vector<double>& s) { return mean_median(s); });
    m.def("efficiency_gap_simplified", &efficiency_gap_simplified, py::arg("d0"), py::arg("seats"), py::arg("k"));
    m.def("eg_swing_profile", [](const std::vector<double>& s, double d0) {
        const auto p = eg_swing_profile(s, d0);
        return std::vector<double>(p.begin(), p.end());
    });
    m.def("prescribed_seats", &prescribed_seats, py::arg("d0"), py::arg("k"), py::arg("i"));
    m.def("band_requirement", [](double d0, int k) { return eg_swing_band_requirement(d0, k).required_in_band; });
    m.def("opt2_score", [](const std::vector<double>& s, double y, double z) { return opt2_score(s, {y, z}); },
          py::arg("shares"), py::arg("y") = 5.0, py::arg("z") = 50.0);

    m.def(
        "enumerate_count",
        [](const std::string& graph_json, int k, double epsilon) {
            return enumerate_partitions(graph_from_text(graph_json), k, epsilon).size();
        },
        py::arg("graph_json"), py::arg("k"), py::arg("epsilon"));

    m.def(
        "run_chain",
        [](const std::string& graph_json, const std::string& config_json) {
            const auto g = graph_from_text(graph_json);
            const double d0 = statewide_share(g.votes());
            const auto cfg = io::chain_config_from_json(io::Json::parse(config_json), d0);
            py::list out;
            run_chain(g, g.votes(), cfg, [&](const PlanRecord& r, const Partition&) { out.append(record_to_dict(r)); });
            return out;
        },
        py::arg("graph_json"), py::arg("config_json"), "Neutral chain records as a list of dicts.");

    m.def(
        "run",
        [](const std::string& manifest_json) {
            std::ostringstream log;
            run(RunManifest::from_json(io::Json::parse(manifest_json)), log);
            return log.str();
        },
        py::arg("manifest_json"), "Execute a run manifest; returns the progress log.");
}
