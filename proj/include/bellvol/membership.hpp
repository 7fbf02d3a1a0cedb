#pragma once

// Membership oracles for the five nested correlation sets of the two-party,
// two-setting, two-outcome scenario:
//
//   C (local)  ⊆  Q (quantum)  ⊆  U (Uffink)  ⊆  T (Tsirelson linear)  ⊆  L (no-signaling cube)
//
// All sets are closed. Every oracle returns a signed margin: the minimum over
// its constraints of (bound - value), so a point is inside iff margin >= -tolerance.

#include <array>
#include <string_view>
#include <utility>
#include <vector>

namespace bellvol {

inline constexpr double kBoundaryTolerance = 1e-12;

/// The four correlations <A_i B_j>, stored row-major: c00, c01, c10, c11.
class CorrelationPoint {
public:
    CorrelationPoint() = default;
    /// Throws DomainError unless every coordinate lies in [-1, 1].
    CorrelationPoint(double c00, double c01, double c10, double c11);
    explicit CorrelationPoint(const std::array<double, 4>& c);

    double operator()(int i, int j) const { return c_[2 * i + j]; }
    double operator[](int k) const { return c_[k]; }
    const std::array<double, 4>& values() const noexcept { return c_; }

    friend bool operator==(const CorrelationPoint&, const CorrelationPoint&) = default;

private:
    std::array<double, 4> c_{};
};

enum class Region { LocalC, QuantumQ, TsirelsonT, UffinkU, NoSignalingL };

/// The three equivalent characterizations of Q. Arcsin is the canonical one.
enum class QuantumForm { Arcsin, Landau, Sextic };

std::string_view region_name(Region r);
std::string_view region_symbol(Region r);
/// Parses "C", "Q", "T", "U", "L" (or the long names); throws DomainError otherwise.
Region parse_region(std::string_view s);
std::string_view quantum_form_name(QuantumForm f);

struct MembershipResult {
    bool inside = false;
    double margin = 0.0;
    Region region = Region::NoSignalingL;
};

/// S - 2 c_ij with S the sum of all four correlations. Throws DomainError for i, j outside {0, 1}.
double chsh_value(const CorrelationPoint& p, int i, int j);

MembershipResult in_local(const CorrelationPoint& p, double tol = kBoundaryTolerance);
MembershipResult in_box_L(const std::array<double, 4>& c, double tol = kBoundaryTolerance);
MembershipResult in_box_L(const CorrelationPoint& p, double tol = kBoundaryTolerance);
MembershipResult in_tsirelson_T(const CorrelationPoint& p, double tol = kBoundaryTolerance);
MembershipResult in_uffink_U(const CorrelationPoint& p, double tol = kBoundaryTolerance);
MembershipResult in_quantum_arcsin(const CorrelationPoint& p, double tol = kBoundaryTolerance);
MembershipResult in_quantum_landau(const CorrelationPoint& p, double tol = kBoundaryTolerance);
MembershipResult in_quantum_sextic(const CorrelationPoint& p, double tol = kBoundaryTolerance);

MembershipResult in_quantum(const CorrelationPoint& p, QuantumForm form,
                            double tol = kBoundaryTolerance);

/// Dispatches to the oracle of `r`; Q uses the arcsin form.
MembershipResult in_region(const CorrelationPoint& p, Region r, double tol = kBoundaryTolerance);

struct MembershipProfile {
    MembershipResult local;
    MembershipResult quantum_arcsin;
    MembershipResult quantum_landau;
    MembershipResult quantum_sextic;
    MembershipResult uffink;
    MembershipResult tsirelson;
    MembershipResult no_signaling;

    const MembershipResult& quantum() const noexcept { return quantum_arcsin; }
    const MembershipResult& at(Region r) const;

    /// Labelled entries in a fixed order, for reporting.
    std::vector<std::pair<std::string_view, MembershipResult>> entries() const;
};

MembershipProfile membership_profile(const CorrelationPoint& p, double tol = kBoundaryTolerance);

}  // namespace bellvol
