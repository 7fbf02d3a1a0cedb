#include "bellvol/polytope.hpp"

#include "nullspace_search.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace bellvol {

namespace {

using detail::IntOverflow;
using detail::NullspaceSearch;

BigInt lcm_of_denominators(const RationalVector& v) {
    BigInt l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, BigInt(denominator(x)));
    return l;
}

// Scales a rational row (with an extra leading entry) to integers.
std::vector<BigInt> integer_row(const Rational& lead, const RationalVector& rest) {
    RationalVector all;
    all.reserve(rest.size() + 1);
    all.push_back(lead);
    all.insert(all.end(), rest.begin(), rest.end());
    const BigInt l = lcm_of_denominators(all);
    std::vector<BigInt> out;
    out.reserve(all.size());
    for (const auto& x : all) out.push_back(BigInt(numerator(x)) * (l / BigInt(denominator(x))));
    return out;
}

std::vector<BigInt> integer_row(const RationalVector& v) {
    const BigInt l = lcm_of_denominators(v);
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(BigInt(numerator(x)) * (l / BigInt(denominator(x))));
    return out;
}

bool fits_int64(const std::vector<std::vector<BigInt>>& rows) {
    // Leave headroom so the first products cannot overflow unnoticed.
    const BigInt limit = BigInt(std::numeric_limits<std::int32_t>::max());
    for (const auto& r : rows)
        for (const auto& x : r)
            if (abs(x) > limit) return false;
    return true;
}

std::vector<std::vector<std::int64_t>> to_int64(const std::vector<std::vector<BigInt>>& rows) {
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<std::int64_t> row;
        row.reserve(r.size());
        for (const auto& x : r) row.push_back(x.convert_to<std::int64_t>());
        out.push_back(std::move(row));
    }
    return out;
}

BigInt to_big(std::int64_t x) { return BigInt(x); }
BigInt to_big(const BigInt& x) { return x; }

// For each full-rank subset, orients the null vector so that every row has a
// nonpositive product with it; subsets where that is impossible are dropped.
// Returns the distinct oriented primitive vectors.
template <class Int>
std::set<std::vector<BigInt>> supporting_null_vectors(const std::vector<std::vector<Int>>& rows,
                                                      int cols) {
    std::set<std::vector<BigInt>> found;
    NullspaceSearch<Int> search(rows, cols);
    search.run([&](const std::vector<int>&, std::vector<Int> x) {
        bool any_pos = false, any_neg = false;
        for (const auto& r : rows) {
            const Int d = detail::dot(r, x);
            if (d > 0) any_pos = true;
            if (d < 0) any_neg = true;
            if (any_pos && any_neg) return;
        }
        if (any_pos) {
            for (auto& v : x) v = -v;
        }
        std::vector<BigInt> key;
        key.reserve(x.size());
        for (const auto& v : x) key.push_back(to_big(v));
        found.insert(std::move(key));
    });
    return found;
}

std::set<std::vector<BigInt>> supporting_null_vectors(const std::vector<std::vector<BigInt>>& rows,
                                                      int cols, bool try_fast) {
    if (try_fast && fits_int64(rows)) {
        try {
            return supporting_null_vectors<std::int64_t>(to_int64(rows), cols);
        } catch (const IntOverflow&) {
        }
    }
    return supporting_null_vectors<BigInt>(rows, cols);
}

// Every full-rank (cols-1)-subset null vector, unoriented; used for recession rays.
template <class Int>
bool has_recession_ray(const std::vector<std::vector<Int>>& normals, int dim) {
    bool ray = false;
    NullspaceSearch<Int> search(normals, dim);
    search.run([&](const std::vector<int>&, const std::vector<Int>& r) {
        if (ray) return;
        bool any_pos = false, any_neg = false;
        for (const auto& a : normals) {
            const Int d = detail::dot(a, r);
            if (d > 0) any_pos = true;
            if (d < 0) any_neg = true;
        }
        // A r <= 0 or A (-r) <= 0 with r != 0 is a ray of the recession cone.
        if (!(any_pos && any_neg)) ray = true;
    });
    return ray;
}

int rank_of(std::vector<RationalVector> m) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (static_cast<int>(r) == rank || m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

Rational determinant(std::vector<RationalVector> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

Rational factorial(int d) {
    Rational f = 1;
    for (int k = 2; k <= d; ++k) f *= k;
    return f;
}

RationalVector centroid(const std::vector<RationalVector>& pts) {
    RationalVector c(pts.front().size(), Rational(0));
    for (const auto& p : pts)
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += p[k];
    for (auto& x : c) x /= static_cast<long>(pts.size());
    return c;
}

using Simplex = std::vector<RationalVector>;

// Fan triangulation of the face spanned by `face` (vertex indices, affine dimension `dim`).
// Sub-faces are intersections with facets of the whole polytope that drop exactly one dimension.
void triangulate_face(const std::vector<RationalVector>& verts,
                      const std::vector<std::vector<int>>& facet_sets, const std::vector<int>& face,
                      int dim, std::vector<Simplex>& out) {
    if (dim == 0) {
        out.push_back({verts[face.front()]});
        return;
    }
    std::set<std::vector<int>> subfaces;
    for (const auto& f : facet_sets) {
        std::vector<int> inter;
        std::set_intersection(face.begin(), face.end(), f.begin(), f.end(),
                              std::back_inserter(inter));
        if (inter.size() == face.size() || static_cast<int>(inter.size()) < dim) continue;
        std::vector<RationalVector> pts;
        for (int k : inter) pts.push_back(verts[k]);
        if (affine_dimension(pts) == dim - 1) subfaces.insert(std::move(inter));
    }
    std::vector<RationalVector> pts;
    for (int k : face) pts.push_back(verts[k]);
    const RationalVector apex = centroid(pts);
    for (const auto& sub : subfaces) {
        std::vector<Simplex> lower;
        triangulate_face(verts, facet_sets, sub, dim - 1, lower);
        for (auto& s : lower) {
            s.push_back(apex);
            out.push_back(std::move(s));
        }
    }
}

void require_dim(const RationalVector& v, int dim, const char* what) {
    if (static_cast<int>(v.size()) != dim)
        throw DomainError(std::string(what) + " has wrong dimension");
}

}  // namespace

RationalPolytope RationalPolytope::from_vertices(int dim, std::vector<RationalVector> v) {
    for (const auto& x : v) require_dim(x, dim, "vertex");
    RationalPolytope p;
    p.dim = dim;
    p.vertices = std::move(v);
    return p;
}

RationalPolytope RationalPolytope::from_halfspaces(int dim, std::vector<Halfspace> h) {
    for (const auto& x : h) require_dim(x.normal, dim, "halfspace normal");
    RationalPolytope p;
    p.dim = dim;
    p.halfspaces = std::move(h);
    return p;
}

Halfspace normalize(const Halfspace& h) {
    const BigInt l = lcm_of_denominators(h.normal);
    BigInt g = 0;
    for (const auto& x : h.normal) g = gcd(g, BigInt(numerator(x)) * (l / BigInt(denominator(x))));
    if (g == 0) throw DomainError("halfspace with zero normal");
    const Rational scale = Rational(l) / Rational(g);
    Halfspace out;
    out.normal.reserve(h.normal.size());
    for (const auto& x : h.normal) out.normal.push_back(x * scale);
    out.offset = h.offset * scale;
    return out;
}

Rational slack(const Halfspace& h, const RationalVector& x) {
    Rational s = h.offset;
    for (std::size_t k = 0; k < x.size(); ++k) s -= h.normal[k] * x[k];
    return s;
}

int affine_dimension(const std::vector<RationalVector>& points) {
    if (points.empty()) return -1;
    std::vector<RationalVector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t k = 1; k < points.size(); ++k) {
        RationalVector d(points[k].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[k][c] - points[0][c];
        diffs.push_back(std::move(d));
    }
    return rank_of(std::move(diffs));
}

RationalPolytope enumerate_vertices(const RationalPolytope& h) {
    if (!h.halfspaces) throw DomainError("enumerate_vertices needs an H-representation");
    if (!h.equalities.empty())
        throw DomainError("enumerate_vertices expects a full-dimensional polytope without equalities");
    const int d = h.dim;
    const auto& hs = *h.halfspaces;

    std::vector<RationalVector> normals;
    for (const auto& x : hs) normals.push_back(x.normal);
    if (rank_of(normals) < d)
        throw UnboundedPolytope("halfspace normals do not span the space (lineality)");

    std::vector<std::vector<BigInt>> normal_rows;
    for (const auto& n : normals) normal_rows.push_back(integer_row(n));
    bool ray;
    if (fits_int64(normal_rows)) {
        try {
            ray = has_recession_ray<std::int64_t>(to_int64(normal_rows), d);
        } catch (const IntOverflow&) {
            ray = has_recession_ray<BigInt>(normal_rows, d);
        }
    } else {
        ray = has_recession_ray<BigInt>(normal_rows, d);
    }
    if (ray) throw UnboundedPolytope("polytope has a nonzero recession direction");

    // Homogeneous rows (-b, a): a point (t, t x) with t > 0 is feasible iff every product is <= 0.
    std::vector<std::vector<BigInt>> rows;
    for (const auto& x : hs) rows.push_back(integer_row(Rational(-x.offset), x.normal));

    std::set<RationalVector> verts;
    for (auto& x : supporting_null_vectors(rows, d + 1, true)) {
        // The orientation makes every row product <= 0; a vertex needs t > 0.
        if (x[0] <= 0) continue;
        RationalVector v;
        v.reserve(d);
        for (int k = 1; k <= d; ++k) v.push_back(Rational(x[k], x[0]));
        verts.insert(std::move(v));
    }
    RationalPolytope out = h;
    out.vertices = std::vector<RationalVector>(verts.begin(), verts.end());
    return out;
}

RationalPolytope enumerate_facets(const RationalPolytope& v) {
    if (!v.vertices) throw DomainError("enumerate_facets needs a V-representation");
    const int d = v.dim;
    const auto& vs = *v.vertices;
    if (affine_dimension(vs) != d)
        throw DegeneratePolytope("vertices do not span a " + std::to_string(d) + "-dimensional polytope");

    // Homogeneous rows (1, v); a null vector (n0, a) gives the hyperplane a.x = -n0.
    std::vector<std::vector<BigInt>> rows;
    for (const auto& x : vs) rows.push_back(integer_row(Rational(1), x));

    std::set<Halfspace> facets;
    for (const auto& x : supporting_null_vectors(rows, d + 1, true)) {
        Halfspace h;
        h.normal.reserve(d);
        for (int k = 1; k <= d; ++k) h.normal.push_back(Rational(x[k]));
        h.offset = Rational(-x[0]);
        facets.insert(normalize(h));
    }
    RationalPolytope out = v;
    out.halfspaces = std::vector<Halfspace>(facets.begin(), facets.end());
    return out;
}

Rational exact_volume(const RationalPolytope& v) {
    if (!v.vertices) throw DomainError("exact_volume needs a V-representation");
    const int d = v.dim;
    if (d < 1 || d > 4) throw DomainError("exact_volume supports dimensions 1 to 4");
    const auto& vs = *v.vertices;
    const RationalPolytope hrep = enumerate_facets(v);

    std::vector<std::vector<int>> facet_sets;
    for (const auto& h : *hrep.halfspaces) {
        std::vector<int> on;
        for (int k = 0; k < static_cast<int>(vs.size()); ++k)
            if (slack(h, vs[k]) == 0) on.push_back(k);
        facet_sets.push_back(std::move(on));
    }

    std::vector<int> all(vs.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Simplex> simplices;
    triangulate_face(vs, facet_sets, all, d, simplices);

    Rational total = 0;
    for (const auto& s : simplices) {
        std::vector<RationalVector> m;
        for (int k = 1; k <= d; ++k) {
            RationalVector row(d);
            for (int c = 0; c < d; ++c) row[c] = s[k][c] - s[0][c];
            m.push_back(std::move(row));
        }
        total += abs(determinant(std::move(m)));
    }
    return total / factorial(d);
}

RationalPolytope local_behavior_polytope() {
    std::vector<RationalVector> v;
    for (const auto& b : deterministic_behaviors()) v.push_back(b.coordinates());
    std::sort(v.begin(), v.end());
    return RationalPolytope::from_vertices(8, std::move(v));
}

RationalPolytope ns_polytope_h() {
    std::vector<Halfspace> h;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a : {1, -1})
                for (int b : {1, -1}) {
                    // 1 + a mA_i + b mB_j + ab c_ij >= 0
                    Halfspace x;
                    x.normal.assign(8, Rational(0));
                    x.normal[i] = -a;
                    x.normal[2 + j] = -b;
                    x.normal[4 + 2 * i + j] = -a * b;
                    x.offset = 1;
                    h.push_back(std::move(x));
                }
    return RationalPolytope::from_halfspaces(8, std::move(h));
}

RationalPolytope correlation_polytope_C() {
    std::set<RationalVector> pts;
    for (const auto& b : deterministic_behaviors())
        pts.insert(RationalVector(b.c.begin(), b.c.end()));
    return RationalPolytope::from_vertices(4, std::vector<RationalVector>(pts.begin(), pts.end()));
}

RationalPolytope cube_h(int dim) {
    std::vector<Halfspace> h;
    for (int k = 0; k < dim; ++k)
        for (int s : {1, -1}) {
            Halfspace x;
            x.normal.assign(dim, Rational(0));
            x.normal[k] = s;
            x.offset = 1;
            h.push_back(std::move(x));
        }
    return RationalPolytope::from_halfspaces(dim, std::move(h));
}

RationalPolytope cube_v(int dim) {
    std::vector<RationalVector> v;
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        RationalVector x(dim);
        for (int k = 0; k < dim; ++k) x[k] = (mask >> k) & 1u ? -1 : 1;
        v.push_back(std::move(x));
    }
    std::sort(v.begin(), v.end());
    return RationalPolytope::from_vertices(dim, std::move(v));
}

RationalPolytope unit_simplex(int dim) {
    std::vector<RationalVector> v;
    v.emplace_back(dim, Rational(0));
    for (int k = 0; k < dim; ++k) {
        RationalVector x(dim, Rational(0));
        x[k] = 1;
        v.push_back(std::move(x));
    }
    return RationalPolytope::from_vertices(dim, std::move(v));
}

std::string facet_kind_name(FacetKind k) {
    switch (k) {
        case FacetKind::Positivity: return "positivity";
        case FacetKind::Chsh: return "chsh";
        case FacetKind::Box: return "box";
        case FacetKind::Other: return "other";
    }
    return "other";
}

namespace {

// Correlation part n satisfies n = s (1,1,1,1) - 2 s e_ij for a sign s.
bool is_chsh_pattern(const RationalVector& n, const Rational& offset) {
    if (n.size() != 4 || offset != 2) return false;
    for (int s : {1, -1}) {
        for (int ij = 0; ij < 4; ++ij) {
            bool match = true;
            for (int k = 0; k < 4 && match; ++k) match = n[k] == (k == ij ? -s : s);
            if (match) return true;
        }
    }
    return false;
}

}  // namespace

FacetKind classify_facet(const Halfspace& raw) {
    const Halfspace h = normalize(raw);
    if (h.normal.size() == 8) {
        static const std::vector<Halfspace> positivity = [] {
            std::vector<Halfspace> out;
            const RationalPolytope ns = ns_polytope_h();
            for (const auto& p : *ns.halfspaces) out.push_back(normalize(p));
            return out;
        }();
        if (std::find(positivity.begin(), positivity.end(), h) != positivity.end())
            return FacetKind::Positivity;
        const bool no_marginals = std::all_of(h.normal.begin(), h.normal.begin() + 4,
                                              [](const Rational& x) { return x == 0; });
        if (no_marginals && is_chsh_pattern(RationalVector(h.normal.begin() + 4, h.normal.end()), h.offset))
            return FacetKind::Chsh;
        return FacetKind::Other;
    }
    if (h.normal.size() == 4) {
        if (is_chsh_pattern(h.normal, h.offset)) return FacetKind::Chsh;
        int nonzero = 0;
        for (const auto& x : h.normal) nonzero += x != 0;
        if (nonzero == 1 && h.offset == 1) return FacetKind::Box;
    }
    return FacetKind::Other;
}

std::vector<Halfspace> chsh_halfspaces_4d() {
    std::vector<Halfspace> out;
    for (int s : {1, -1})
        for (int ij = 0; ij < 4; ++ij) {
            Halfspace h;
            for (int k = 0; k < 4; ++k) h.normal.push_back(Rational(k == ij ? -s : s));
            h.offset = 2;
            out.push_back(normalize(h));
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bellvol
