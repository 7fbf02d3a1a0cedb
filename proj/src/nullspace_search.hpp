#pragma once

// Exhaustive search over row subsets of an integer matrix with m columns: for
// every (m-1)-subset of rows of full rank m-1, report the primitive integer
// vector spanning its null space. Subsets are reduced incrementally, so a
// dependent prefix prunes its whole subtree.
//
// Int is either std::int64_t (with overflow-checked arithmetic) or BigInt.

#include "bellvol/rational.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace bellvol::detail {

struct IntOverflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw IntOverflow{};
    return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw IntOverflow{};
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw IntOverflow{};
    return r;
}
inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) {
    if (a == INT64_MIN || b == INT64_MIN) throw IntOverflow{};
    return std::gcd(a, b);
}

inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt gcd_abs(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <class Int>
void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd_abs(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

template <class Int>
Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s = add(s, mul(a[k], b[k]));
    return s;
}

template <class Int>
class NullspaceSearch {
public:
    NullspaceSearch(const std::vector<std::vector<Int>>& rows, int cols)
        : rows_(rows), cols_(cols), depth_(cols - 1), reduced_(depth_), pivots_(depth_) {}

    /// visit(const std::vector<int>& subset, const std::vector<Int>& null_vector)
    template <class Visit>
    void run(Visit&& visit) {
        std::vector<int> subset;
        subset.reserve(depth_);
        recurse(0, subset, visit);
    }

private:
    template <class Visit>
    void recurse(int start, std::vector<int>& subset, Visit& visit) {
        const int k = static_cast<int>(subset.size());
        if (k == depth_) {
            visit(subset, null_vector());
            return;
        }
        const int n = static_cast<int>(rows_.size());
        for (int r = start; r <= n - (depth_ - k); ++r) {
            if (!reduce_into(k, rows_[r])) continue;
            subset.push_back(r);
            recurse(r + 1, subset, visit);
            subset.pop_back();
        }
    }

    // Eliminates previous pivots from `row` and stores it at level k; false if it becomes zero.
    bool reduce_into(int k, const std::vector<Int>& row) {
        std::vector<Int>& v = reduced_[k];
        v = row;
        for (int t = 0; t < k; ++t) {
            const int p = pivots_[t];
            if (v[p] == 0) continue;
            const Int vp = v[p];
            const Int piv = reduced_[t][p];
            for (int j = 0; j < cols_; ++j) v[j] = sub(mul(v[j], piv), mul(vp, reduced_[t][j]));
            make_primitive(v);
        }
        for (int j = 0; j < cols_; ++j) {
            if (v[j] != 0) {
                pivots_[k] = j;
                return true;
            }
        }
        return false;
    }

    // Back substitution over the echelon rows; the one non-pivot column is free.
    std::vector<Int> null_vector() const {
        std::vector<bool> is_pivot(cols_, false);
        for (int t = 0; t < depth_; ++t) is_pivot[pivots_[t]] = true;
        int free_col = 0;
        while (is_pivot[free_col]) ++free_col;

        std::vector<Int> x(cols_, Int(0));
        std::vector<bool> known(cols_, false);
        x[free_col] = 1;
        known[free_col] = true;
        // Row t has zeros at the pivots of rows < t, so solve from the last row upward.
        for (int t = depth_ - 1; t >= 0; --t) {
            const auto& row = reduced_[t];
            const int p = pivots_[t];
            Int s = 0;
            for (int j = 0; j < cols_; ++j)
                if (known[j] && row[j] != 0) s = add(s, mul(row[j], x[j]));
            const Int piv = row[p];
            for (int j = 0; j < cols_; ++j)
                if (known[j]) x[j] = mul(x[j], piv);
            x[p] = -s;
            known[p] = true;
            make_primitive(x);
        }
        return x;
    }

    const std::vector<std::vector<Int>>& rows_;
    int cols_;
    int depth_;
    std::vector<std::vector<Int>> reduced_;
    std::vector<int> pivots_;
};

}  // namespace bellvol::detail
