#include "bellvol/cli.hpp"

#include "bellvol/behavior.hpp"
#include "bellvol/errors.hpp"
#include "bellvol/io.hpp"
#include "bellvol/membership.hpp"
#include "bellvol/metric.hpp"
#include "bellvol/polytope.hpp"
#include "bellvol/quantum.hpp"
#include "bellvol/random.hpp"
#include "bellvol/rational.hpp"
#include "bellvol/volume.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace bellvol::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct Section {
    std::string name;
    std::vector<Json> rows;
};

struct Report {
    std::vector<Section> sections;
    /// Replaces the aligned table in the table format when nonempty.
    std::string text;
    int exit_code = kExitOk;
};

using Cells = std::vector<std::pair<std::string, Json>>;

void flatten(const Json& j, const std::string& prefix, Cells& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
    } else {
        out.emplace_back(prefix, j);
    }
}

std::string cell_text(const Json& v, bool human) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (human && v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
        return buf;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// Column order follows first appearance across rows.
std::vector<std::string> columns(const std::vector<Cells>& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& [k, _] : r)
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    return cols;
}

const Json* lookup(const Cells& r, const std::string& key) {
    for (const auto& [k, v] : r)
        if (k == key) return &v;
    return nullptr;
}

void render_json(const Report& rep, std::ostream& os) {
    for (const auto& s : rep.sections)
        for (const auto& row : s.rows) {
            if (rep.sections.size() > 1) {
                Json j{{"section", s.name}};
                for (const auto& [k, v] : row.items()) j[k] = v;
                os << j.dump() << '\n';
            } else {
                os << row.dump() << '\n';
            }
        }
}

void render_csv(const Report& rep, std::ostream& os) {
    bool first = true;
    for (const auto& s : rep.sections) {
        if (!first) os << '\n';
        first = false;
        std::vector<Cells> rows;
        for (const auto& r : s.rows) {
            rows.emplace_back();
            flatten(r, "", rows.back());
        }
        const auto cols = columns(rows);
        for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << csv_escape(cols[c]);
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const Json* v = lookup(r, cols[c]);
                os << (c ? "," : "") << (v ? csv_escape(cell_text(*v, false)) : "");
            }
            os << '\n';
        }
    }
}

void render_table(const Report& rep, std::ostream& os) {
    if (!rep.text.empty()) {
        os << rep.text;
        return;
    }
    bool first = true;
    for (const auto& s : rep.sections) {
        if (!first) os << '\n';
        first = false;
        if (rep.sections.size() > 1) os << s.name << ":\n";
        std::vector<Cells> rows;
        for (const auto& r : s.rows) {
            rows.emplace_back();
            flatten(r, "", rows.back());
        }
        const auto cols = columns(rows);
        std::vector<std::vector<std::string>> text(rows.size(), std::vector<std::string>(cols.size()));
        std::vector<bool> numeric(cols.size(), true);
        std::vector<std::size_t> width(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            width[c] = cols[c].size();
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const Json* v = lookup(rows[r], cols[c]);
                if (v && !v->is_number() && !v->is_null()) numeric[c] = false;
                text[r][c] = v ? cell_text(*v, true) : "";
                width[c] = std::max(width[c], text[r][c].size());
            }
        }
        auto line = [&](const std::vector<std::string>& cells, bool header) {
            std::string out;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const std::string pad(width[c] - cells[c].size(), ' ');
                if (c) out += "  ";
                out += (numeric[c] && !header) ? pad + cells[c] : cells[c] + pad;
            }
            while (!out.empty() && out.back() == ' ') out.pop_back();
            os << out << '\n';
        };
        line(cols, true);
        for (const auto& t : text) line(t, false);
    }
}

unsigned default_workers() {
    if (const char* env = std::getenv("BELLVOL_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 1024)
            throw UsageError("BELLVOL_WORKERS must be an integer in [1, 1024]");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

CorrelationPoint point_arg(const std::string& flag, const std::string& text) {
    std::string body = text;
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw UsageError(flag + ": cannot read " + text.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return parse_point(body);
    } catch (const InputError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

Json rational_array(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json optional_number(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

// --- subcommands -------------------------------------------------------------------------

Report membership_cmd(const CorrelationPoint& p, double tol) {
    Section s{"membership", {}};
    for (const auto& [label, r] : membership_profile(p, tol).entries())
        s.rows.push_back(Json{{"set", std::string(label)}, {"inside", r.inside}, {"margin", r.margin}});
    return Report{{s}, "", kExitOk};
}

Report volume_cmd(const std::string& region_text, const std::string& method, const EstimatorConfig& cfg,
                  double tol) {
    Region r;
    try {
        r = parse_region(region_text);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--region: ") + e.what());
    }
    Json row;
    if (method == "mc") {
        row = estimate_to_json(mc_volume(r, cfg));
    } else if (method == "quadrature") {
        if (r != Region::QuantumQ) throw Error("quadrature is implemented for region Q only");
        row = estimate_to_json(quadrature_volume_Q(tol));
    } else {
        RationalPolytope poly;
        if (r == Region::LocalC)
            poly = correlation_polytope_C();
        else if (r == Region::NoSignalingL)
            poly = cube_v(4);
        else
            throw Error("region " + std::string(region_symbol(r)) + " has no rational polytope representation");
        const Rational v = exact_volume(poly);
        VolumeEstimate e;
        e.value = to_double(v);
        e.region = std::string(region_symbol(r));
        e.method = Method::Exact;
        row = estimate_to_json(e);
        row["exact"] = to_string(v);
    }
    return Report{{Section{"volume", {row}}}, "", kExitOk};
}

Json headline_row(const std::string& quantity, const std::string& method, double value, double se,
                  std::optional<double> reference, const std::string& kind) {
    std::optional<double> dev;
    if (reference && se > 0.0 && kind == "closed form") dev = (value - *reference) / se;
    if (reference && se == 0.0 && value == *reference) dev = 0.0;
    return Json{{"quantity", quantity},     {"method", method},
                {"value", value},           {"std_error", se},
                {"reference", optional_number(reference)},
                {"reference_kind", kind},   {"deviation_sigma", optional_number(dev)}};
}

Report ratios_cmd(const EstimatorConfig& cfg, double tol) {
    const HitTally t = tally_hits(cfg);
    const AnalyticConstants a = analytic_constants();
    const VolumeEstimate q_quad = quadrature_volume_Q(tol);
    const std::string mc = method_name(Method::MonteCarlo);
    const std::string closed = "closed form";
    const std::string published = "published, rounded";

    Section s{"headline", {}};
    auto vol = [&](Region r, std::optional<double> ref, const std::string& kind) {
        const VolumeEstimate e = volume_from_tally(t, r, cfg.seed);
        s.rows.push_back(headline_row("V_" + std::string(region_symbol(r)), mc, e.value, e.std_error, ref, kind));
        return e;
    };
    vol(Region::LocalC, a.V_C, closed);
    vol(Region::QuantumQ, a.V_Q, closed);
    const VolumeEstimate vu = vol(Region::UffinkU, std::nullopt, "");
    const VolumeEstimate vt = vol(Region::TsirelsonT, std::nullopt, "");
    vol(Region::NoSignalingL, a.V_L, closed);
    s.rows.push_back(headline_row("V_Q", method_name(Method::Quadrature), q_quad.value, 0.0, a.V_Q, closed));

    auto ratio = [&](Region x, Region y, double ref) {
        const VolumeEstimate e = ratio_from_tally(t, x, y, cfg.seed);
        s.rows.push_back(headline_row(e.region, mc, e.value, e.std_error, ref, closed));
    };
    ratio(Region::QuantumQ, Region::LocalC, a.ratio_QC);
    ratio(Region::QuantumQ, Region::NoSignalingL, a.ratio_QL);
    ratio(Region::LocalC, Region::NoSignalingL, a.ratio_CL);

    s.rows.push_back(headline_row("V_T/16", mc, vt.value / kCubeVolume, vt.std_error / kCubeVolume, 0.961, published));
    s.rows.push_back(headline_row("V_U/16", mc, vu.value / kCubeVolume, vu.std_error / kCubeVolume, 0.950, published));
    const double vq = q_quad.value;
    s.rows.push_back(headline_row("V_T/V_Q-1", mc, vt.value / vq - 1.0, vt.std_error / vq, 0.038, published));
    s.rows.push_back(headline_row("V_U/V_Q-1", mc, vu.value / vq - 1.0, vu.std_error / vq, 0.026, published));
    s.rows.push_back(headline_row("1-V_Q/V_T", mc, 1.0 - vq / vt.value, vq * vt.std_error / (vt.value * vt.value),
                                  std::nullopt, ""));
    s.rows.push_back(headline_row("1-V_Q/V_U", mc, 1.0 - vq / vu.value, vq * vu.std_error / (vu.value * vu.value),
                                  std::nullopt, ""));

    Section run{"run", {Json{{"n", t.n}, {"seed", cfg.seed}, {"quadrature_tol", tol}}}};
    return Report{{s, run}, "", kExitOk};
}

RationalPolytope named_polytope(const std::string& which) {
    if (which == "local") return local_behavior_polytope();
    if (which == "ns") return ns_polytope_h();
    return correlation_polytope_C();
}

Report polytope_cmd(const std::string& which, const std::string& task) {
    const RationalPolytope p = named_polytope(which);
    auto vertices = [&] { return p.vertices ? *p.vertices : *enumerate_vertices(p).vertices; };
    auto facets = [&] { return p.halfspaces ? *p.halfspaces : *enumerate_facets(p).halfspaces; };

    Report rep;
    std::ostringstream text;
    if (task == "vertices") {
        const auto v = vertices();
        Section s{"vertices", {}};
        for (std::size_t k = 0; k < v.size(); ++k) s.rows.push_back(Json{{"index", k}, {"vertex", rational_array(v[k])}});
        write_polytope(text, RationalPolytope::from_vertices(p.dim, v));
        rep.sections.push_back(std::move(s));
    } else if (task == "facets") {
        const auto h = facets();
        Section s{"facets", {}};
        for (std::size_t k = 0; k < h.size(); ++k)
            s.rows.push_back(Json{{"index", k},
                                  {"normal", rational_array(h[k].normal)},
                                  {"offset", to_string(h[k].offset)},
                                  {"kind", facet_kind_name(classify_facet(h[k]))}});
        write_polytope(text, RationalPolytope::from_halfspaces(p.dim, h));
        rep.sections.push_back(std::move(s));
    } else if (task == "counts") {
        const std::size_t nv = vertices().size(), nf = facets().size();
        rep.sections.push_back(Section{
            "counts", {Json{{"polytope", which}, {"dimension", p.dim}, {"vertices", nv}, {"facets", nf}}}});
        text << "vertices: " << nv << ", facets: " << nf << '\n';
    } else {
        RationalPolytope v = p.vertices ? p : enumerate_vertices(p);
        const Rational vol = exact_volume(v);
        rep.sections.push_back(Section{
            "volume", {Json{{"polytope", which}, {"dimension", p.dim}, {"volume", to_string(vol)}, {"value", to_double(vol)}}}});
        text << "volume: " << to_string(vol) << '\n';
    }
    rep.text = text.str();
    return rep;
}

Json check_row(const std::string& check, const std::string& value, std::optional<std::string> expected) {
    Json row{{"check", check}, {"value", value}};
    row["expected"] = expected ? Json(*expected) : Json(nullptr);
    row["pass"] = expected ? Json(value == *expected) : Json(nullptr);
    return row;
}

Report examples_cmd(const JointProbabilityTable& t, const std::string& which, bool verify) {
    Report rep;
    Section table{"behavior", {}};
    const Json settings = table_to_json(t)["settings"];
    for (const Json& s : settings) table.rows.push_back(s);
    rep.sections.push_back(std::move(table));
    if (!verify) return rep;

    const bool pr = which == "pr-box", sig = which == "signaling";
    auto expect = [&](const char* for_pr, const char* for_sig) -> std::optional<std::string> {
        if (pr) return std::string(for_pr);
        if (sig) return std::string(for_sig);
        return std::nullopt;
    };

    Section checks{"checks", {}};
    const NoSignalingCheck ns = check_no_signaling(t);
    checks.rows.push_back(check_row("normalized", "true", "true"));
    checks.rows.push_back(check_row("no_signaling", ns.holds ? "true" : "false", expect("true", "false")));
    checks.rows.push_back(check_row("max_marginal_discrepancy", to_string(ns.max_discrepancy), std::nullopt));

    std::array<Rational, 4> c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            c[2 * i + j] = t.correlation(i, j);
            checks.rows.push_back(check_row("c" + std::to_string(i) + std::to_string(j), to_string(c[2 * i + j]), std::nullopt));
        }
    const Rational sum = c[0] + c[1] + c[2] + c[3];
    Rational worst = 0;
    int satisfied = 0;
    for (int k = 0; k < 4; ++k) {
        const Rational v = sum - 2 * c[k];
        worst = std::max(worst, Rational(abs(v)));
        satisfied += (v <= 2) + (-v <= 2);
        checks.rows.push_back(check_row("chsh" + std::to_string(k / 2) + std::to_string(k % 2), to_string(v), std::nullopt));
    }
    const std::optional<std::string> none;
    checks.rows.push_back(check_row("max_abs_chsh", to_string(worst), pr ? std::optional<std::string>("4") : none));
    checks.rows.push_back(check_row("chsh_inequalities_satisfied", std::to_string(satisfied) + "/8",
                                    sig ? std::optional<std::string>("8/8") : none));

    for (const Json& row : checks.rows)
        if (row["pass"].is_boolean() && !row["pass"].get<bool>()) rep.exit_code = kExitComputation;
    rep.sections.push_back(std::move(checks));
    return rep;
}

Report sample_quantum_cmd(std::uint64_t n, std::uint64_t seed) {
    CounterStream rng(seed);
    Section samples{"samples", {}};
    std::uint64_t outside_local = 0;
    double max_chsh = 0.0, min_margin = 1e300;
    for (std::uint64_t k = 0; k < n; ++k) {
        const CorrelationPoint p = sample_quantum_point(rng);
        const MembershipProfile prof = membership_profile(p);
        double chsh = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) chsh = std::max(chsh, std::abs(chsh_value(p, i, j)));
        outside_local += !prof.local.inside;
        max_chsh = std::max(max_chsh, chsh);
        min_margin = std::min(min_margin, prof.quantum_arcsin.margin);
        samples.rows.push_back(
            Json{{"index", k}, {"point", point_to_json(p)}, {"max_abs_chsh", chsh}, {"profile", profile_to_json(prof)}});
    }
    Section summary{"summary",
                    {Json{{"samples", n},
                          {"seed", seed},
                          {"outside_local", outside_local},
                          {"max_abs_chsh", n ? Json(max_chsh) : Json(nullptr)},
                          {"min_quantum_margin", n ? Json(min_margin) : Json(nullptr)}}}};
    return Report{{samples, summary}, "", kExitOk};
}

Report distance_cmd(const CorrelationPoint& p, const CorrelationPoint& q) {
    Json row = distance_to_json(toggle_distance(p, q));
    row["note"] = "max and sum are convenience aggregates";
    return Report{{Section{"distance", {row}}}, "", kExitOk};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Volumes and memberships of two-party correlation sets", "bellvol"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "bellvol 0.1.0");

    std::string format = "table";
    std::string output;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--output,-o", output, "Write the report to this file");

    std::uint64_t n = 10'000'000, seed = 1;
    unsigned workers = 0;
    double tol = kBoundaryTolerance, quad_tol = 1e-6;
    std::string point, region, method = "mc", which, task, from, to, input;
    bool verify = false;

    auto add_mc = [&](CLI::App* s) {
        s->add_option("--n", n, "Number of samples")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
        s->add_option("--seed", seed, "Random seed");
        s->add_option("--workers", workers, "Worker threads (default: BELLVOL_WORKERS or all cores)")
            ->check(CLI::Range(1u, 1024u));
    };

    auto* membership = app.add_subcommand("membership", "Membership profile of a correlation point");
    membership->add_option("--point", point, "JSON object, c00,c01,c10,c11, or @file")->required();
    membership->add_option("--tol", tol, "Boundary tolerance")->check(CLI::NonNegativeNumber);

    auto* volume = app.add_subcommand("volume", "Volume of one region");
    volume->add_option("--region", region, "C, Q, T, U or L")->required();
    volume->add_option("--method", method, "Estimation method")->check(CLI::IsMember({"mc", "quadrature", "exact"}));
    volume->add_option("--tol", quad_tol, "Absolute tolerance for quadrature");
    add_mc(volume);

    auto* ratios = app.add_subcommand("ratios", "Headline volumes, ratios and excesses");
    ratios->add_option("--tol", quad_tol, "Absolute tolerance for the quadrature reference");
    add_mc(ratios);

    auto* poly = app.add_subcommand("polytope", "Exact polytope computations");
    poly->add_option("--which", which, "Polytope")->required()->check(CLI::IsMember({"local", "ns", "corrC"}));
    poly->add_option("--task", task, "Task")->required()->check(CLI::IsMember({"vertices", "facets", "counts", "volume"}));

    auto* examples = app.add_subcommand("examples", "Behavior tables and their checks");
    auto* which_opt = examples->add_option("--which", which, "Built-in table")->check(CLI::IsMember({"pr-box", "signaling"}));
    auto* input_opt = examples->add_option("--input", input, "Behavior table JSON file");
    which_opt->excludes(input_opt);
    examples->add_flag("--verify", verify, "Run no-signaling and CHSH checks");

    auto* sampler = app.add_subcommand("sample-quantum", "Correlations of random two-qubit experiments");
    sampler->add_option("--n", n, "Number of samples")->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1} << 32));
    sampler->add_option("--seed", seed, "Random seed");

    auto* distance = app.add_subcommand("distance", "Toggle distance between two correlation points");
    distance->add_option("--from", from, "Point")->required();
    distance->add_option("--to", to, "Point")->required();

    for (auto* s : {membership, volume, ratios, poly, examples, sampler, distance}) s->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Report rep;
    try {
        EstimatorConfig cfg;
        cfg.sample_count = n;
        cfg.seed = seed;
        cfg.worker_count = workers ? workers : default_workers();

        if (*membership) {
            rep = membership_cmd(point_arg("--point", point), tol);
        } else if (*volume) {
            rep = volume_cmd(region, method, cfg, quad_tol);
        } else if (*ratios) {
            rep = ratios_cmd(cfg, quad_tol);
        } else if (*poly) {
            rep = polytope_cmd(which, task);
        } else if (*examples) {
            JointProbabilityTable t;
            if (!input.empty()) {
                std::ifstream in(input);
                if (!in) throw UsageError("--input: cannot read " + input);
                Json j;
                try {
                    j = Json::parse(in);
                    t = table_from_json(j);
                } catch (const Json::parse_error& e) {
                    throw UsageError("--input: not valid JSON: " + std::string(e.what()));
                } catch (const InputError& e) {
                    throw UsageError("--input: " + std::string(e.what()));
                }
            } else if (which == "pr-box") {
                t = pr_box();
            } else if (which == "signaling") {
                t = signaling_example();
            } else {
                throw UsageError("examples needs --which or --input");
            }
            rep = examples_cmd(t, which, verify);
        } else if (*sampler) {
            rep = sample_quantum_cmd(n == 10'000'000 && sampler->count("--n") == 0 ? 1000 : n, seed);
        } else if (*distance) {
            rep = distance_cmd(point_arg("--from", from), point_arg("--to", to));
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }

    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            err << "error: cannot write " << output << '\n';
            return kExitComputation;
        }
    }
    std::ostream& os = output.empty() ? out : file;
    if (format == "json")
        render_json(rep, os);
    else if (format == "csv")
        render_csv(rep, os);
    else
        render_table(rep, os);
    return rep.exit_code;
}

}  // namespace bellvol::cli
