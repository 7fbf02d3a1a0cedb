#pragma once

// Exact rational polytopes: vertex/facet enumeration by exhaustive basis
// enumeration, and exact volume by recursive fan triangulation.

#include "bellvol/behavior.hpp"
#include "bellvol/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bellvol {

/// normal . x <= offset
struct Halfspace {
    RationalVector normal;
    Rational offset;

    friend bool operator==(const Halfspace&, const Halfspace&) = default;
    friend bool operator<(const Halfspace& a, const Halfspace& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

/// normal . x == offset
struct Equality {
    RationalVector normal;
    Rational offset;

    friend bool operator==(const Equality&, const Equality&) = default;
};

struct RationalPolytope {
    int dim = 0;
    std::optional<std::vector<RationalVector>> vertices;
    std::optional<std::vector<Halfspace>> halfspaces;
    std::vector<Equality> equalities;

    static RationalPolytope from_vertices(int dim, std::vector<RationalVector> v);
    static RationalPolytope from_halfspaces(int dim, std::vector<Halfspace> h);
};

/// Scales by a positive factor so the normal is a primitive integer vector.
Halfspace normalize(const Halfspace& h);

/// Slack offset - normal . x (>= 0 inside).
Rational slack(const Halfspace& h, const RationalVector& x);

/// Dimension of the affine hull of `points` (-1 for an empty set).
int affine_dimension(const std::vector<RationalVector>& points);

/// All vertices of a bounded H-polytope, sorted lexicographically.
/// Throws UnboundedPolytope when the recession cone is nontrivial.
RationalPolytope enumerate_vertices(const RationalPolytope& h);

/// All facets of a full-dimensional V-polytope, normalized and sorted.
/// Throws DegeneratePolytope if the vertices do not span the ambient space.
RationalPolytope enumerate_facets(const RationalPolytope& v);

/// Exact d-volume of a full-dimensional V-polytope with d <= 4.
Rational exact_volume(const RationalPolytope& v);

// --- The scenario's polytopes ---------------------------------------------------------

/// 8D behavior polytope conv(deterministic behaviors) (V-representation).
RationalPolytope local_behavior_polytope();
/// 8D no-signaling polytope: the 16 positivity constraints -a mA_i - b mB_j - ab c_ij <= 1.
RationalPolytope ns_polytope_h();
/// 4D correlation polytope C: the 8 projected deterministic points.
RationalPolytope correlation_polytope_C();
/// [-1, 1]^d as halfspaces or as vertices.
RationalPolytope cube_h(int dim);
RationalPolytope cube_v(int dim);
/// conv(0, e_1, ..., e_d).
RationalPolytope unit_simplex(int dim);

/// Facet classification for the scenario's polytopes.
enum class FacetKind { Positivity, Chsh, Box, Other };
std::string facet_kind_name(FacetKind k);

/// Positivity: one of the 16 NS constraints (8D). Chsh: +-(S - 2 c_ij) <= 2, in either the 8D
/// behavior coordinates (zero marginal part) or the 4D correlation coordinates. Box: +-c_ij <= 1 (4D).
FacetKind classify_facet(const Halfspace& h);

/// The eight CHSH inequalities |S - 2 c_ij| <= 2 as normalized 4D halfspaces, sorted.
std::vector<Halfspace> chsh_halfspaces_4d();

// --- Text format ----------------------------------------------------------------------
//
//   polytope <dim>
//   vertices <count>            (optional section; one vertex per line)
//   1 -1 1/2 ...
//   halfspaces <count>          (optional section; "normal... <= offset")
//   -1 0 -1 0 ... <= 1
//   equalities <count>          (optional section; "normal... = offset")
//   end
//
// Rationals are written as p or p/q. Blank lines and lines starting with '#' are ignored.
void write_polytope(std::ostream& os, const RationalPolytope& p);
RationalPolytope read_polytope(std::istream& is);

}  // namespace bellvol
