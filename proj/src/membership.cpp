#include "bellvol/membership.hpp"

#include "bellvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bellvol {

namespace {

MembershipResult verdict(Region r, double margin, double tol) {
    return MembershipResult{margin >= -tol, margin, r};
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// The eight slacks bound - |S - 2 x_ij|, where x is either the correlations or their arcsines.
double chsh_family_margin(const std::array<double, 4>& x, double bound) {
    const double s = x[0] + x[1] + x[2] + x[3];
    double margin = bound;
    for (double xij : x) margin = std::min(margin, bound - std::abs(s - 2.0 * xij));
    return margin;
}

}  // namespace

CorrelationPoint::CorrelationPoint(double c00, double c01, double c10, double c11)
    : CorrelationPoint(std::array<double, 4>{c00, c01, c10, c11}) {}

CorrelationPoint::CorrelationPoint(const std::array<double, 4>& c) : c_(c) {
    static constexpr const char* names[] = {"c00", "c01", "c10", "c11"};
    for (int k = 0; k < 4; ++k) {
        if (!(c_[k] >= -1.0 && c_[k] <= 1.0))
            throw DomainError(std::string("correlation ") + names[k] + " = " +
                              std::to_string(c_[k]) + " lies outside [-1, 1]");
    }
}

std::string_view region_name(Region r) {
    switch (r) {
        case Region::LocalC: return "local";
        case Region::QuantumQ: return "quantum";
        case Region::TsirelsonT: return "tsirelson";
        case Region::UffinkU: return "uffink";
        case Region::NoSignalingL: return "no-signaling";
    }
    return "?";
}

std::string_view region_symbol(Region r) {
    switch (r) {
        case Region::LocalC: return "C";
        case Region::QuantumQ: return "Q";
        case Region::TsirelsonT: return "T";
        case Region::UffinkU: return "U";
        case Region::NoSignalingL: return "L";
    }
    return "?";
}

Region parse_region(std::string_view s) {
    for (Region r : {Region::LocalC, Region::QuantumQ, Region::TsirelsonT, Region::UffinkU,
                     Region::NoSignalingL}) {
        if (s == region_symbol(r) || s == region_name(r)) return r;
    }
    throw DomainError("unknown region '" + std::string(s) + "' (expected one of C, Q, T, U, L)");
}

std::string_view quantum_form_name(QuantumForm f) {
    switch (f) {
        case QuantumForm::Arcsin: return "arcsin";
        case QuantumForm::Landau: return "landau";
        case QuantumForm::Sextic: return "sextic";
    }
    return "?";
}

double chsh_value(const CorrelationPoint& p, int i, int j) {
    if (i < 0 || i > 1 || j < 0 || j > 1)
        throw DomainError("setting indices must be 0 or 1");
    const auto& c = p.values();
    return c[0] + c[1] + c[2] + c[3] - 2.0 * p(i, j);
}

MembershipResult in_local(const CorrelationPoint& p, double tol) {
    return verdict(Region::LocalC, chsh_family_margin(p.values(), 2.0), tol);
}

MembershipResult in_box_L(const std::array<double, 4>& c, double tol) {
    double margin = 1.0;
    for (double x : c) margin = std::min(margin, 1.0 - std::abs(x));
    return verdict(Region::NoSignalingL, margin, tol);
}

MembershipResult in_box_L(const CorrelationPoint& p, double tol) { return in_box_L(p.values(), tol); }

MembershipResult in_tsirelson_T(const CorrelationPoint& p, double tol) {
    return verdict(Region::TsirelsonT, chsh_family_margin(p.values(), 2.0 * std::numbers::sqrt2), tol);
}

MembershipResult in_uffink_U(const CorrelationPoint& p, double tol) {
    const double a = p[0], b = p[1], c = p[2], d = p[3];
    const double first = (a + d) * (a + d) + (b - c) * (b - c);
    const double second = (a - d) * (a - d) + (b + c) * (b + c);
    return verdict(Region::UffinkU, std::min(4.0 - first, 4.0 - second), tol);
}

MembershipResult in_quantum_arcsin(const CorrelationPoint& p, double tol) {
    std::array<double, 4> s{};
    for (int k = 0; k < 4; ++k) s[k] = std::asin(clamp_unit(p[k]));
    return verdict(Region::QuantumQ, chsh_family_margin(s, std::numbers::pi), tol);
}

MembershipResult in_quantum_landau(const CorrelationPoint& p, double tol) {
    const double a = p[0], b = p[1], c = p[2], d = p[3];
    auto co = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
    const double lhs = std::abs(a * b - c * d);
    const double rhs = co(a) * co(b) + co(c) * co(d);
    return verdict(Region::QuantumQ, rhs - lhs, tol);
}

MembershipResult in_quantum_sextic(const CorrelationPoint& p, double tol) {
    const double a = p[0], b = p[1], c = p[2], d = p[3];
    const auto& v = p.values();

    double sum2 = 0.0, sum4 = 0.0, max2 = 0.0;
    for (double x : v) {
        sum2 += x * x;
        sum4 += x * x * x * x;
        max2 = std::max(max2, x * x);
    }
    const double prod = a * b * c * d;

    // First chain: 0 <= triple product <= quartic expression.
    const double triple = (b * c - a * d) * (a * b - c * d) * (a * c - b * d);
    const double quartic = 0.25 * sum2 * sum2 - 0.5 * sum4 - 2.0 * prod;
    const double first = std::min(triple, quartic - triple);

    // Second: 0 <= 2 max c^4 - (max c^2)(sum c^2) + 2 prod.
    const double second = 2.0 * max2 * max2 - max2 * sum2 + 2.0 * prod;

    return verdict(Region::QuantumQ, std::max(first, second), tol);
}

MembershipResult in_quantum(const CorrelationPoint& p, QuantumForm form, double tol) {
    switch (form) {
        case QuantumForm::Arcsin: return in_quantum_arcsin(p, tol);
        case QuantumForm::Landau: return in_quantum_landau(p, tol);
        case QuantumForm::Sextic: return in_quantum_sextic(p, tol);
    }
    return in_quantum_arcsin(p, tol);
}

MembershipResult in_region(const CorrelationPoint& p, Region r, double tol) {
    switch (r) {
        case Region::LocalC: return in_local(p, tol);
        case Region::QuantumQ: return in_quantum_arcsin(p, tol);
        case Region::TsirelsonT: return in_tsirelson_T(p, tol);
        case Region::UffinkU: return in_uffink_U(p, tol);
        case Region::NoSignalingL: return in_box_L(p, tol);
    }
    return in_box_L(p, tol);
}

const MembershipResult& MembershipProfile::at(Region r) const {
    switch (r) {
        case Region::LocalC: return local;
        case Region::QuantumQ: return quantum_arcsin;
        case Region::TsirelsonT: return tsirelson;
        case Region::UffinkU: return uffink;
        case Region::NoSignalingL: return no_signaling;
    }
    return no_signaling;
}

std::vector<std::pair<std::string_view, MembershipResult>> MembershipProfile::entries() const {
    return {{"C", local},
            {"Q", quantum_arcsin},
            {"Q_landau", quantum_landau},
            {"Q_sextic", quantum_sextic},
            {"U", uffink},
            {"T", tsirelson},
            {"L", no_signaling}};
}

MembershipProfile membership_profile(const CorrelationPoint& p, double tol) {
    return MembershipProfile{in_local(p, tol),        in_quantum_arcsin(p, tol),
                             in_quantum_landau(p, tol), in_quantum_sextic(p, tol),
                             in_uffink_U(p, tol),     in_tsirelson_T(p, tol),
                             in_box_L(p, tol)};
}

}  // namespace bellvol
