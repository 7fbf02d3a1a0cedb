#include "bellvol/io.hpp"

#include "bellvol/rational.hpp"

#include <cmath>
#include <sstream>

namespace bellvol {

namespace {

constexpr const char* kPointKeys[4] = {"c00", "c01", "c10", "c11"};
constexpr const char* kOutcomeKeys[4] = {"++", "+-", "-+", "--"};

double coordinate(const std::string& field, double x) {
    if (!std::isfinite(x)) throw InputError("point field \"" + field + "\" is not finite");
    if (x < -1.0 || x > 1.0) throw InputError("point field \"" + field + "\" lies outside [-1, 1]");
    return x;
}

Rational probability(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const DomainError&) {
        }
    }
    throw InputError("behavior field " + where + " must be a rational \"p/q\" or an integer");
}

}  // namespace

Json point_to_json(const CorrelationPoint& p) {
    Json j;
    for (int k = 0; k < 4; ++k) j[kPointKeys[k]] = p[k];
    return j;
}

CorrelationPoint point_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("point must be a JSON object with fields c00, c01, c10, c11");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : kPointKeys) known = known || key == k;
        if (!known) throw InputError("point has unknown field \"" + key + "\"");
    }
    std::array<double, 4> c{};
    for (int k = 0; k < 4; ++k) {
        const auto it = j.find(kPointKeys[k]);
        if (it == j.end()) throw InputError(std::string("point field \"") + kPointKeys[k] + "\" is missing");
        if (!it->is_number()) throw InputError(std::string("point field \"") + kPointKeys[k] + "\" is not a number");
        c[k] = coordinate(kPointKeys[k], it->get<double>());
    }
    return CorrelationPoint(c);
}

CorrelationPoint parse_point(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw InputError(std::string("point is not valid JSON: ") + e.what());
        }
        return point_from_json(j);
    }
    std::array<double, 4> c{};
    std::stringstream ss(text);
    std::string item;
    int k = 0;
    while (std::getline(ss, item, ',')) {
        if (k == 4) throw InputError("inline point has more than four components");
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw InputError(std::string("point field \"") + kPointKeys[k] + "\" is not a number");
        c[k] = coordinate(kPointKeys[k], x);
        ++k;
    }
    if (k != 4) throw InputError("inline point needs four components c00,c01,c10,c11");
    return CorrelationPoint(c);
}

Json table_to_json(const JointProbabilityTable& t) {
    Json settings = Json::array();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Json p;
            int k = 0;
            for (int a : {1, -1})
                for (int b : {1, -1}) p[kOutcomeKeys[k++]] = to_string(t.p(i, j, a, b));
            settings.push_back(Json{{"i", i}, {"j", j}, {"p", p}});
        }
    return Json{{"settings", settings}};
}

JointProbabilityTable table_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("settings") || !j["settings"].is_array())
        throw InputError("behavior must be an object with a \"settings\" array");
    std::array<Rational, 16> e{};
    std::array<bool, 4> seen{};
    for (const Json& s : j["settings"]) {
        if (!s.is_object() || !s.contains("i") || !s.contains("j") || !s.contains("p"))
            throw InputError("each setting needs fields \"i\", \"j\" and \"p\"");
        if (!s["i"].is_number_integer() || !s["j"].is_number_integer())
            throw InputError("setting fields \"i\" and \"j\" must be 0 or 1");
        const int i = s["i"].get<int>(), jj = s["j"].get<int>();
        if (i < 0 || i > 1 || jj < 0 || jj > 1) throw InputError("setting fields \"i\" and \"j\" must be 0 or 1");
        if (seen[2 * i + jj]) throw InputError("setting (" + std::to_string(i) + "," + std::to_string(jj) + ") repeated");
        seen[2 * i + jj] = true;
        const Json& p = s["p"];
        if (!p.is_object()) throw InputError("setting field \"p\" must be an object");
        int k = 0;
        for (int a : {1, -1})
            for (int b : {1, -1}) {
                const char* key = kOutcomeKeys[k++];
                const std::string where = "settings[" + std::to_string(i) + "," + std::to_string(jj) + "].p[\"" + key + "\"]";
                if (!p.contains(key)) throw InputError("behavior field " + where + " is missing");
                e[JointProbabilityTable::index(i, jj, a, b)] = probability(p[key], where);
            }
    }
    for (int k = 0; k < 4; ++k)
        if (!seen[k]) throw InputError("setting (" + std::to_string(k / 2) + "," + std::to_string(k % 2) + ") is missing");
    return JointProbabilityTable::from_entries(e);
}

Json estimate_to_json(const VolumeEstimate& e) {
    return Json{{"region", e.region},          {"method", method_name(e.method)}, {"value", e.value},
                {"std_error", e.std_error},     {"n", e.sample_count},             {"seed", e.seed}};
}

VolumeEstimate estimate_from_json(const Json& j) {
    VolumeEstimate e;
    try {
        e.region = j.at("region").get<std::string>();
        const auto m = j.at("method").get<std::string>();
        if (m == method_name(Method::MonteCarlo))
            e.method = Method::MonteCarlo;
        else if (m == method_name(Method::Quadrature))
            e.method = Method::Quadrature;
        else if (m == method_name(Method::Exact))
            e.method = Method::Exact;
        else
            throw InputError("estimate field \"method\" has unknown value \"" + m + "\"");
        e.value = j.at("value").get<double>();
        e.std_error = j.at("std_error").get<double>();
        e.sample_count = j.at("n").get<std::uint64_t>();
        e.seed = j.at("seed").get<std::uint64_t>();
    } catch (const Json::exception& ex) {
        throw InputError(std::string("malformed estimate: ") + ex.what());
    }
    return e;
}

Json profile_to_json(const MembershipProfile& p) {
    Json j;
    for (const auto& [label, r] : p.entries()) j[std::string(label)] = Json{{"inside", r.inside}, {"margin", r.margin}};
    return j;
}

Json distance_to_json(const ToggleDistance& d) {
    Json per;
    for (int k = 0; k < 4; ++k) per[std::string("d") + (kPointKeys[k] + 1)] = d.per_coordinate[k];
    return Json{{"per_coordinate", per}, {"max", d.max()}, {"sum", d.sum()}};
}

}  // namespace bellvol
