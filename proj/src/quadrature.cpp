// Volume of Q by deterministic quadrature.
//
// In arcsin coordinates s_ij = arcsin c_ij the set Q is the polytope
//   |s00 + s01 + s10 + s11 - 2 s_ij| <= pi,   s in [-pi/2, pi/2]^4,
// and the flat measure on correlations becomes prod cos(s_ij) ds.
//
// Coordinates are integrated in the order s00, s01, s10, s11. The s11 integral is
// sin(hi) - sin(lo) in closed form. At every outer level the integrand is a marginal
// of a smooth function over a polytope section, which is analytic between the
// projections of the section's vertices; those breakpoints are computed explicitly so
// each Gauss-Kronrod piece integrates an analytic function.

#include "bellvol/errors.hpp"
#include "bellvol/volume.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace bellvol {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kMaxDepth = 4;
constexpr double kPieceTol = 1e-12;  // relative, per piece
constexpr double kSingular = 1e-12;
constexpr double kFeasible = 1e-10;

struct Constraint {
    std::array<double, 4> normal;
    double rhs;  // normal . s <= rhs
};

class QuantumRegion {
public:
    explicit QuantumRegion(const QuadratureOptions& o) : o_(o) {
        const double w = o.slab_bound;
        for (int ij = 0; ij < 4; ++ij)
            for (double sign : {1.0, -1.0}) {
                Constraint c;
                for (int k = 0; k < 4; ++k) c.normal[k] = sign * (k == ij ? -1.0 : 1.0);
                c.rhs = w;
                cons_.push_back(c);
            }
        for (int k = 0; k < 4; ++k) {
            Constraint up{{0, 0, 0, 0}, o.upper[k]};
            up.normal[k] = 1.0;
            Constraint down{{0, 0, 0, 0}, -o.lower[k]};
            down.normal[k] = -1.0;
            cons_.push_back(up);
            cons_.push_back(down);
        }
    }

    // Integral of cos(s11) over the feasible s11 interval for the given s00, s01, s10.
    double innermost(const std::array<double, 4>& s) const {
        double lo = o_.lower[3], hi = o_.upper[3];
        for (const auto& c : cons_) {
            const double a = c.normal[3];
            if (a == 0.0) continue;
            const double r = c.rhs - c.normal[0] * s[0] - c.normal[1] * s[1] - c.normal[2] * s[2];
            if (a > 0.0)
                hi = std::min(hi, r / a);
            else
                lo = std::max(lo, r / a);
        }
        return hi > lo ? std::sin(hi) - std::sin(lo) : 0.0;
    }

    // Coordinate `level` of every vertex of the section with s[0..level) fixed, clipped to the box,
    // plus the box ends; sorted and deduplicated.
    std::vector<double> breakpoints(int level, const std::array<double, 4>& s) const {
        const int m = 4 - level;
        std::vector<double> out{o_.lower[level], o_.upper[level]};
        const int n = static_cast<int>(cons_.size());
        std::vector<int> pick(m);
        // Enumerate m-subsets of the constraints.
        auto visit = [&](auto&& self, int start, int depth) -> void {
            if (depth == m) {
                double y0;
                if (solve_vertex(level, s, pick, y0) && y0 > o_.lower[level] && y0 < o_.upper[level])
                    out.push_back(y0);
                return;
            }
            for (int r = start; r <= n - (m - depth); ++r) {
                pick[depth] = r;
                self(self, r + 1, depth + 1);
            }
        };
        visit(visit, 0, 0);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end(),
                              [](double x, double y) { return std::abs(x - y) < 1e-13; }),
                  out.end());
        return out;
    }

private:
    // Solves the chosen constraints as equalities in the free coordinates; true if the
    // solution is unique and satisfies every constraint. y0 receives coordinate `level`.
    bool solve_vertex(int level, const std::array<double, 4>& s, const std::vector<int>& pick,
                      double& y0) const {
        const int m = static_cast<int>(pick.size());
        double a[4][5];
        for (int r = 0; r < m; ++r) {
            const auto& c = cons_[pick[r]];
            double rhs = c.rhs;
            for (int k = 0; k < level; ++k) rhs -= c.normal[k] * s[k];
            for (int k = 0; k < m; ++k) a[r][k] = c.normal[level + k];
            a[r][m] = rhs;
        }
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int r = col + 1; r < m; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            if (std::abs(a[piv][col]) < kSingular) return false;
            if (piv != col)
                for (int k = 0; k <= m; ++k) std::swap(a[piv][k], a[col][k]);
            for (int r = 0; r < m; ++r) {
                if (r == col) continue;
                const double f = a[r][col] / a[col][col];
                for (int k = col; k <= m; ++k) a[r][k] -= f * a[col][k];
            }
        }
        std::array<double, 4> full = s;
        for (int k = 0; k < m; ++k) full[level + k] = a[k][m] / a[k][k];
        for (const auto& c : cons_) {
            double v = 0.0;
            for (int k = 0; k < 4; ++k) v += c.normal[k] * full[k];
            if (v > c.rhs + kFeasible) return false;
        }
        y0 = full[level];
        return true;
    }

    const QuadratureOptions& o_;
    std::vector<Constraint> cons_;
};

struct Accumulated {
    double value = 0.0;
    double error = 0.0;  // absolute bound including every inner level
};

// Integral over coordinates level..3 of prod cos, with s[0..level) fixed.
Accumulated integrate_level(const QuantumRegion& region, int level, std::array<double, 4> s) {
    if (level == 3) return {region.innermost(s), 0.0};

    const std::vector<double> cuts = region.breakpoints(level, s);
    Accumulated total;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double x0 = cuts[k], x1 = cuts[k + 1];
        double worst_inner = 0.0;
        auto f = [&](double x) {
            s[level] = x;
            const Accumulated inner = integrate_level(region, level + 1, s);
            worst_inner = std::max(worst_inner, inner.error);
            return std::cos(x) * inner.value;
        };
        double err = 0.0;
        const double piece = gauss_kronrod<double, 31>::integrate(f, x0, x1, kMaxDepth, kPieceTol, &err);
        total.value += piece;
        total.error += err + (x1 - x0) * worst_inner;
    }
    return total;
}

}  // namespace

QuadratureResult integrate_quantum_region(const QuadratureOptions& opts) {
    if (!(opts.abs_tol >= 1e-9)) throw DomainError("quadrature abs_tol must be at least 1e-9");
    for (int k = 0; k < 4; ++k) {
        if (!(opts.lower[k] >= -std::numbers::pi / 2 && opts.upper[k] <= std::numbers::pi / 2 &&
              opts.lower[k] <= opts.upper[k]))
            throw DomainError("quadrature box must lie inside [-pi/2, pi/2]^4");
    }
    if (!(opts.slab_bound >= 0.0)) throw DomainError("slab bound must be nonnegative");

    const QuantumRegion region(opts);
    const Accumulated a = integrate_level(region, 0, {0.0, 0.0, 0.0, 0.0});

    QuadratureResult r{a.value, a.error};
    if (r.error_bound > opts.abs_tol)
        throw ToleranceNotMet("quadrature error bound " + std::to_string(r.error_bound) +
                                  " exceeds requested tolerance",
                              r.error_bound);
    return r;
}

VolumeEstimate quadrature_volume_Q(double abs_tol) {
    QuadratureOptions opts;
    opts.abs_tol = abs_tol;
    const QuadratureResult r = integrate_quantum_region(opts);
    VolumeEstimate e;
    e.value = r.value;
    e.std_error = 0.0;
    e.sample_count = 0;
    e.region = "Q";
    e.method = Method::Quadrature;
    return e;
}

}  // namespace bellvol
