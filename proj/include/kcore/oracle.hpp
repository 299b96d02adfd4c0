#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "kcore/constraints.hpp"
#include "kcore/errors.hpp"
#include "kcore/linalg.hpp"
#include "kcore/lp.hpp"
#include "kcore/rational.hpp"

namespace kcore {

// Size limits for the brute-force enumerator. The subset walk is
// exponential in num_vars, so anything beyond desk scale is refused
// instead of silently running for hours. Callers that know what they are
// doing (and the KCORE_GUARD_OVERRIDE escape hatch in the CLI) can pass a
// larger guard explicitly.
struct OracleGuard {
    std::size_t max_vars = 12;
    std::size_t max_rows = 40;
};

// Exact description of a polyhedron's extreme structure.
//
// Vertices and rays are coordinate vectors aligned with the originating
// system's variable list. Rays are canonicalized so the first nonzero
// component has absolute value 1; two rays that are positive multiples of
// each other therefore collapse to one entry. An unbounded polyhedron is
// exactly one with a nonempty ray list.
struct PolyhedronSummary {
    bool feasible = false;
    bool bounded = true;
    std::vector<std::vector<Rational>> vertices;
    std::vector<std::vector<Rational>> rays;
};

namespace detail {

inline void check_guard(const ConstraintSystem& sys, const OracleGuard& guard) {
    if (sys.num_vars() > guard.max_vars) {
        throw guard_error("refusing enumeration: " + std::to_string(sys.num_vars()) +
                          " variables exceed the guard of " + std::to_string(guard.max_vars));
    }
    if (sys.rows.size() > guard.max_rows) {
        throw guard_error("refusing enumeration: " + std::to_string(sys.rows.size()) +
                          " rows exceed the guard of " + std::to_string(guard.max_rows));
    }
}

// Calls visit(indices) for every `size`-subset of {0..row_count-1} that
// contains all of `forced` (assumed sorted). Subsets are generated in
// lexicographic order for determinism.
template <typename Visit>
void for_each_row_subset(std::size_t row_count, const std::vector<std::size_t>& forced,
                         std::size_t size, Visit&& visit) {
    if (forced.size() > size) return;
    std::vector<std::size_t> free_rows;
    for (std::size_t r = 0; r < row_count; ++r) {
        if (!std::binary_search(forced.begin(), forced.end(), r)) free_rows.push_back(r);
    }
    const std::size_t pick = size - forced.size();
    if (pick > free_rows.size()) return;

    std::vector<std::size_t> idx(pick);
    for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
    while (true) {
        std::vector<std::size_t> chosen = forced;
        for (std::size_t i : idx) chosen.push_back(free_rows[i]);
        std::sort(chosen.begin(), chosen.end());
        visit(chosen);
        if (pick == 0) break;
        // Advance the combination odometer.
        std::size_t pos = pick;
        while (pos > 0 && idx[pos - 1] == free_rows.size() - (pick - pos) - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < pick; ++i) idx[i] = idx[i - 1] + 1;
    }
}

inline bool homogeneous_feasible(const ConstraintSystem& sys, const std::vector<Rational>& d) {
    for (const auto& row : sys.rows) {
        const Rational val = row_value(row, d);
        if (row.relation == Relation::eq ? val != 0 : val < 0) return false;
    }
    return true;
}

// Scales so the first nonzero component becomes +1 or -1. Positive
// multiples of one direction land on the same vector; opposite directions
// stay distinct, as they describe different rays.
inline std::vector<Rational> canonical_direction(std::vector<Rational> d) {
    for (const auto& x : d) {
        if (x == 0) continue;
        const Rational scale = x < 0 ? -x : x;
        for (auto& y : d) y /= scale;
        break;
    }
    return d;
}

// All extreme directions of the recession cone, canonicalized. See the
// comment on enumerate_vertices for why this walks (num_vars - 1)-row
// kernels instead of slicing with a normalization hyperplane.
inline std::set<std::vector<Rational>> ray_directions(const ConstraintSystem& sys) {
    const std::size_t nv = sys.num_vars();
    const std::size_t m = sys.rows.size();
    std::set<std::vector<Rational>> ray_set;
    if (nv == 0) return ray_set;

    std::vector<std::size_t> equalities;
    for (std::size_t r = 0; r < m; ++r) {
        if (sys.rows[r].relation == Relation::eq) equalities.push_back(r);
    }

    for_each_row_subset(m, equalities, nv - 1, [&](const std::vector<std::size_t>& rows) {
        Matrix a;
        for (std::size_t r : rows) a.push_back(sys.rows[r].coeffs);
        if (a.empty()) a.push_back(std::vector<Rational>(nv, Rational(0)));
        const auto kernel = kernel_basis(a);
        if (kernel.size() != 1) return;  // not a rank-(nv-1) subset
        for (const bool negate : {false, true}) {
            auto d = kernel.front();
            if (negate) {
                for (auto& x : d) x = -x;
            }
            if (homogeneous_feasible(sys, d)) {
                ray_set.insert(canonical_direction(std::move(d)));
            }
        }
    });

    // Lineality directions (kernel of the entire row matrix) are rays in
    // both orientations but have tight rank below nv - 1, so the subset
    // walk above cannot see them.
    Matrix all_rows;
    for (const auto& row : sys.rows) all_rows.push_back(row.coeffs);
    if (all_rows.empty()) all_rows.push_back(std::vector<Rational>(nv, Rational(0)));
    for (const auto& line : kernel_basis(all_rows)) {
        ray_set.insert(canonical_direction(line));
        auto neg = line;
        for (auto& x : neg) x = -x;
        ray_set.insert(canonical_direction(std::move(neg)));
    }
    return ray_set;
}

}  // namespace detail

// Brute-force vertex and extreme-ray enumeration by walking tight row
// subsets, the classical textbook procedure: a vertex is the unique
// solution of num_vars independent rows (always including the equality
// rows) that happens to satisfy everything else.
//
// Rays come from the homogenized system. A normalization hyperplane over
// the component sum is useless here: every direction of these polyhedra
// sums to zero because the efficiency row is part of the recession cone's
// equations. Instead, extreme rays are read off as the one-dimensional
// kernels of (num_vars - 1)-row subsets, keeping whichever of d and -d
// satisfies the homogenized system. Any kernel of the full row matrix is a
// lineality direction and is appended in both orientations, so "no rays"
// still certifies boundedness even for degenerate systems.
inline PolyhedronSummary enumerate_vertices(const ConstraintSystem& sys,
                                            const OracleGuard& guard = OracleGuard{}) {
    detail::check_guard(sys, guard);
    const std::size_t nv = sys.num_vars();
    const std::size_t m = sys.rows.size();

    std::vector<std::size_t> equalities;
    for (std::size_t r = 0; r < m; ++r) {
        if (sys.rows[r].relation == Relation::eq) equalities.push_back(r);
    }

    PolyhedronSummary out;

    std::set<std::vector<Rational>> vertex_set;
    detail::for_each_row_subset(m, equalities, nv, [&](const std::vector<std::size_t>& rows) {
        Matrix a;
        std::vector<Rational> b;
        for (std::size_t r : rows) {
            a.push_back(sys.rows[r].coeffs);
            b.push_back(sys.rows[r].rhs);
        }
        const auto x = solve_unique(a, b);
        if (!x) return;  // dependent subset, skip
        if (!first_violated_row(sys, *x).has_value()) vertex_set.insert(*x);
    });
    out.vertices.assign(vertex_set.begin(), vertex_set.end());

    const auto ray_set = detail::ray_directions(sys);
    out.rays.assign(ray_set.begin(), ray_set.end());

    out.feasible = !out.vertices.empty() || lp_feasible(sys);
    if (!out.feasible) {
        // An empty set is bounded and has no extreme structure to report.
        out.vertices.clear();
        out.rays.clear();
    }
    out.bounded = out.rays.empty();
    return out;
}

// Exact nonemptiness test. Cheaper than full enumeration and also correct
// for degenerate feasible sets that have no vertex at all.
inline bool is_feasible(const ConstraintSystem& sys, const OracleGuard& guard = OracleGuard{}) {
    detail::check_guard(sys, guard);
    return lp_feasible(sys);
}

}  // namespace kcore
