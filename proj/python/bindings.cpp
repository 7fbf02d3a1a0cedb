#include "bellvol/behavior.hpp"
#include "bellvol/cli.hpp"
#include "bellvol/io.hpp"
#include "bellvol/membership.hpp"
#include "bellvol/metric.hpp"
#include "bellvol/polytope.hpp"
#include "bellvol/quantum.hpp"
#include "bellvol/volume.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace bellvol;

namespace {

using Point4 = std::array<double, 4>;

py::dict estimate_dict(const VolumeEstimate& e) {
    py::dict d;
    d["region"] = e.region;
    d["method"] = method_name(e.method);
    d["value"] = e.value;
    d["std_error"] = e.std_error;
    d["n"] = e.sample_count;
    d["seed"] = e.seed;
    return d;
}

EstimatorConfig config(std::uint64_t n, std::uint64_t seed, unsigned workers) {
    EstimatorConfig cfg;
    cfg.sample_count = n;
    cfg.seed = seed;
    cfg.worker_count = workers;
    return cfg;
}

RationalPolytope named(const std::string& which) {
    if (which == "local") return local_behavior_polytope();
    if (which == "ns") return ns_polytope_h();
    if (which == "corrC") return correlation_polytope_C();
    throw DomainError("unknown polytope '" + which + "' (expected local, ns or corrC)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Membership, volumes and ratios of two-party correlation sets";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("membership_profile", [](const Point4& c, double tol) {
        py::dict d;
        for (const auto& [label, r] : membership_profile(CorrelationPoint(c), tol).entries())
            d[py::str(std::string(label))] = py::make_tuple(r.inside, r.margin);
        return d;
    }, py::arg("point"), py::arg("tol") = kBoundaryTolerance,
       "Maps each set label to (inside, margin).");

    m.def("in_region", [](const Point4& c, const std::string& region, double tol) {
        const MembershipResult r = in_region(CorrelationPoint(c), parse_region(region), tol);
        return py::make_tuple(r.inside, r.margin);
    }, py::arg("point"), py::arg("region"), py::arg("tol") = kBoundaryTolerance);

    m.def("chsh_value", [](const Point4& c, int i, int j) { return chsh_value(CorrelationPoint(c), i, j); },
          py::arg("point"), py::arg("i"), py::arg("j"));

    m.def("polytope_counts", [](const std::string& which) {
        std::size_t nv = 0, nf = 0;
        {
            py::gil_scoped_release release;
            const RationalPolytope p = named(which);
            nv = p.vertices ? p.vertices->size() : enumerate_vertices(p).vertices->size();
            nf = p.halfspaces ? p.halfspaces->size() : enumerate_facets(p).halfspaces->size();
        }
        return py::make_tuple(nv, nf);
    }, py::arg("which"));

    m.def("exact_volume", [](const std::string& which) {
        const RationalPolytope p = named(which);
        return to_string(exact_volume(p.vertices ? p : enumerate_vertices(p)));
    }, py::arg("which"), "Exact volume as a \"p/q\" string.");

    m.def("mc_volume", [](const std::string& region, std::uint64_t n, std::uint64_t seed, unsigned workers) {
        VolumeEstimate e;
        {
            py::gil_scoped_release release;
            e = mc_volume(parse_region(region), config(n, seed, workers));
        }
        return estimate_dict(e);
    }, py::arg("region"), py::arg("n") = 1'000'000, py::arg("seed") = 1, py::arg("workers") = 1);

    m.def("ratio_estimate", [](const std::string& a, const std::string& b, std::uint64_t n, std::uint64_t seed,
                               unsigned workers) {
        VolumeEstimate e;
        {
            py::gil_scoped_release release;
            e = ratio_estimate(parse_region(a), parse_region(b), config(n, seed, workers));
        }
        return estimate_dict(e);
    }, py::arg("a"), py::arg("b"), py::arg("n") = 1'000'000, py::arg("seed") = 1, py::arg("workers") = 1);

    m.def("quadrature_volume_Q", [](double abs_tol) {
        VolumeEstimate e;
        {
            py::gil_scoped_release release;
            e = quadrature_volume_Q(abs_tol);
        }
        return estimate_dict(e);
    }, py::arg("abs_tol") = 1e-6);

    m.def("analytic_constants", [] {
        const AnalyticConstants a = analytic_constants();
        py::dict d;
        d["V_C"] = a.V_C;
        d["V_L"] = a.V_L;
        d["V_Q"] = a.V_Q;
        d["Q/C"] = a.ratio_QC;
        d["Q/L"] = a.ratio_QL;
        d["C/L"] = a.ratio_CL;
        return d;
    });

    m.def("tsirelson_witness", [] { return correlations(singlet(), chsh_optimal_settings()).values(); },
          "Correlations of the singlet under the CHSH-optimal settings.");

    m.def("sample_quantum_points", [](std::uint64_t n, std::uint64_t seed) {
        CounterStream rng(seed);
        std::vector<Point4> out;
        out.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k) out.push_back(sample_quantum_point(rng).values());
        return out;
    }, py::arg("n"), py::arg("seed") = 1);

    m.def("toggle_distance", [](const Point4& p, const Point4& q) {
        return toggle_distance(CorrelationPoint(p), CorrelationPoint(q)).per_coordinate;
    }, py::arg("p"), py::arg("q"));

    m.def("min_toggles", [](std::vector<int> alice, std::vector<int> bob, double target) {
        const ToggleResult r = min_toggles(OutcomeSequence(std::move(alice), std::move(bob)), target);
        py::dict d;
        d["count"] = r.count;
        d["achieved"] = r.achieved;
        d["snapped"] = r.snapped;
        d["toggled"] = r.toggled;
        d["alice"] = r.result.alice();
        return d;
    }, py::arg("alice"), py::arg("bob"), py::arg("target"));

    m.def("behavior_example", [](const std::string& which) {
        if (which == "pr-box") return table_to_json(pr_box()).dump();
        if (which == "signaling") return table_to_json(signaling_example()).dump();
        throw DomainError("unknown example '" + which + "' (expected pr-box or signaling)");
    }, py::arg("which"), "Behavior table as JSON text.");

    m.def("check_behavior", [](const std::string& json_text) {
        const JointProbabilityTable t = table_from_json(Json::parse(json_text));
        const NoSignalingCheck ns = check_no_signaling(t);
        py::dict d;
        d["no_signaling"] = ns.holds;
        d["max_discrepancy"] = to_string(ns.max_discrepancy);
        std::vector<std::string> c;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) c.push_back(to_string(t.correlation(i, j)));
        d["correlations"] = c;
        return d;
    }, py::arg("json_text"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");
}
