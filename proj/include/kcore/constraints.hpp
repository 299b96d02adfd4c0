#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kcore/errors.hpp"
#include "kcore/game.hpp"
#include "kcore/rational.hpp"
#include "kcore/subset.hpp"

namespace kcore {

// Which polyhedron a constraint system describes.
//
//   plain    - dominance on every proper nonempty coalition plus the
//              efficiency equality at N.
//   monotone - plain plus one inequality per pair (player i, coalition L
//              containing i) forcing monotonicity of the solution.
//   infinite - plain plus nonnegativity of every coefficient of degree >= 2,
//              forcing the solution to be infinitely monotone.
enum class CoreVariant { plain, monotone, infinite };

enum class Relation { geq, eq };

enum class RowKind { dominance, efficiency, monotonicity, nonneg };

// Provenance of a row. `a` is the coalition the row talks about (the
// dominated coalition A, the monotonicity coalition L, or the variable K of
// a nonnegativity row); `i` is the distinguished player of a monotonicity
// row and 0 otherwise.
struct RowTag {
    RowKind kind = RowKind::dominance;
    Mask a = 0;
    int i = 0;
};

struct ConstraintRow {
    std::vector<Rational> coeffs;  // dense, aligned with ConstraintSystem::vars
    Relation relation = Relation::geq;
    Rational rhs = 0;
    RowTag tag;
};

// A linear system over the Moebius coefficients {m*(K) : K nonempty, |K| <= k}.
// Variables are listed in the binary order (masks ascending), which is the
// canonical order used everywhere for serialization and triangularity checks.
struct ConstraintSystem {
    GroundSet ground{1};
    int k = 1;
    std::vector<Mask> vars;
    std::vector<int> var_of_mask;  // mask -> variable index, -1 if absent
    std::vector<ConstraintRow> rows;
    CoreVariant variant = CoreVariant::plain;

    std::size_t num_vars() const { return vars.size(); }

    int index_of(Mask m) const {
        if (m >= var_of_mask.size() || var_of_mask[m] < 0) {
            throw input_error("coalition " + format_subset(m) + " is not a system variable");
        }
        return var_of_mask[m];
    }

    std::size_t equality_count() const {
        std::size_t c = 0;
        for (const auto& r : rows) {
            if (r.relation == Relation::eq) ++c;
        }
        return c;
    }
};

inline Rational row_value(const ConstraintRow& row, const std::vector<Rational>& x) {
    if (row.coeffs.size() != x.size()) throw internal_error("row/point dimension mismatch");
    Rational acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (row.coeffs[j] != 0) acc += row.coeffs[j] * x[j];
    }
    return acc;
}

inline bool row_satisfied(const ConstraintRow& row, const std::vector<Rational>& x) {
    const Rational lhs = row_value(row, x);
    return row.relation == Relation::eq ? lhs == row.rhs : lhs >= row.rhs;
}

// Index of the first violated row, or nullopt when x is feasible.
inline std::optional<std::size_t> first_violated_row(const ConstraintSystem& sys,
                                                     const std::vector<Rational>& x) {
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        if (!row_satisfied(sys.rows[r], x)) return r;
    }
    return std::nullopt;
}

// Projects a Moebius vector onto the system's coordinates. Any nonzero
// coefficient on a coalition outside the variable set is an error: such a
// point cannot live in this polyhedron's space at all.
inline std::vector<Rational> coordinates(const ConstraintSystem& sys, const MobiusVector& m) {
    if (m.ground.n != sys.ground.n) throw input_error("ground set mismatch");
    std::vector<Rational> x(sys.num_vars(), Rational(0));
    for (Mask a = 1; a < m.ground.table_size(); ++a) {
        if (m.coeffs[a] == 0) continue;
        x[static_cast<std::size_t>(sys.index_of(a))] = m.coeffs[a];
    }
    return x;
}

inline MobiusVector from_coordinates(const ConstraintSystem& sys, const std::vector<Rational>& x) {
    if (x.size() != sys.num_vars()) throw internal_error("coordinate dimension mismatch");
    MobiusVector m(sys.ground);
    for (std::size_t j = 0; j < x.size(); ++j) m.coeffs[sys.vars[j]] = x[j];
    return m;
}

// Builds the constraint system whose solutions are the k-additive games
// dominating v (with equality at N), in the chosen variant. Dominance rows
// are emitted by coalition cardinality first and mask second, so small
// coalitions come before large ones; the efficiency equality follows them,
// and variant-specific rows come last.
inline ConstraintSystem core_constraints(const GameTable& v, int k, CoreVariant variant) {
    const GroundSet g = v.ground;
    if (k < 1 || k > g.n) throw input_error("additivity bound k must lie in [1, n]");

    ConstraintSystem sys;
    sys.ground = g;
    sys.k = k;
    sys.variant = variant;
    sys.vars = subsets_up_to(g, k);
    sys.var_of_mask.assign(g.table_size(), -1);
    for (std::size_t j = 0; j < sys.vars.size(); ++j) {
        sys.var_of_mask[sys.vars[j]] = static_cast<int>(j);
    }

    const auto row_over = [&](auto&& keep) {
        std::vector<Rational> c(sys.num_vars(), Rational(0));
        for (std::size_t j = 0; j < sys.vars.size(); ++j) {
            if (keep(sys.vars[j])) c[j] = 1;
        }
        return c;
    };

    // Dominance: sum of m*(K) over K inside A must reach v(A).
    std::vector<Mask> proper;
    for (Mask a = 1; a + 1 < g.table_size(); ++a) proper.push_back(a);
    std::stable_sort(proper.begin(), proper.end(),
                     [](Mask x, Mask y) { return card(x) != card(y) ? card(x) < card(y) : x < y; });
    for (Mask a : proper) {
        ConstraintRow row;
        row.coeffs = row_over([&](Mask kk) { return (kk & ~a) == 0; });
        row.relation = Relation::geq;
        row.rhs = v.values[a];
        row.tag = {RowKind::dominance, a, 0};
        sys.rows.push_back(std::move(row));
    }

    // Efficiency: the full coalition is reached exactly.
    {
        ConstraintRow row;
        row.coeffs = std::vector<Rational>(sys.num_vars(), Rational(1));
        row.relation = Relation::eq;
        row.rhs = v.values[g.full()];
        row.tag = {RowKind::efficiency, g.full(), 0};
        sys.rows.push_back(std::move(row));
    }

    if (variant == CoreVariant::monotone) {
        // One row per (player i, coalition L containing i): the solution's
        // discrete derivative along i at L is nonnegative.
        for (int i = 1; i <= g.n; ++i) {
            const Mask s = singleton(i);
            for (Mask l = 1; l < g.table_size(); ++l) {
                if ((l & s) == 0) continue;
                ConstraintRow row;
                row.coeffs = row_over([&](Mask kk) { return (kk & s) != 0 && (kk & ~l) == 0; });
                row.relation = Relation::geq;
                row.rhs = 0;
                row.tag = {RowKind::monotonicity, l, i};
                sys.rows.push_back(std::move(row));
            }
        }
    } else if (variant == CoreVariant::infinite) {
        // Nonnegative interaction coefficients from degree 2 upward.
        for (std::size_t j = 0; j < sys.vars.size(); ++j) {
            if (card(sys.vars[j]) < 2) continue;
            ConstraintRow row;
            row.coeffs = std::vector<Rational>(sys.num_vars(), Rational(0));
            row.coeffs[j] = 1;
            row.relation = Relation::geq;
            row.rhs = 0;
            row.tag = {RowKind::nonneg, sys.vars[j], 0};
            sys.rows.push_back(std::move(row));
        }
    }

    return sys;
}

}  // namespace kcore
