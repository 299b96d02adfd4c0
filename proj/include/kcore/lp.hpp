#pragma once

#include <cstddef>
#include <vector>

#include "kcore/constraints.hpp"
#include "kcore/errors.hpp"
#include "kcore/rational.hpp"

namespace kcore {

namespace detail {

// Phase-one simplex on an exact tableau. Variables are the split free
// variables x = xp - xn, one surplus variable per inequality, and one
// artificial variable per row; the artificial cost sum is driven to zero.
// Bland's rule keeps the exact pivoting finite. Sizes here are tiny, so the
// reduced costs are recomputed from scratch each round for clarity.
class PhaseOneTableau {
public:
    explicit PhaseOneTableau(const ConstraintSystem& sys) {
        const std::size_t nv = sys.num_vars();
        const std::size_t m = sys.rows.size();
        std::size_t surplus = 0;
        for (const auto& r : sys.rows) {
            if (r.relation == Relation::geq) ++surplus;
        }
        cols_ = 2 * nv + surplus + m;
        art_begin_ = 2 * nv + surplus;
        tab_.assign(m, std::vector<Rational>(cols_ + 1, Rational(0)));
        basis_.resize(m);

        std::size_t next_surplus = 2 * nv;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& row = sys.rows[i];
            const bool flip = row.rhs < 0;
            const Rational sign = flip ? -1 : 1;
            for (std::size_t j = 0; j < nv; ++j) {
                tab_[i][j] = sign * row.coeffs[j];
                tab_[i][nv + j] = -sign * row.coeffs[j];
            }
            if (row.relation == Relation::geq) {
                tab_[i][next_surplus++] = -sign;
            }
            tab_[i][art_begin_ + i] = 1;
            tab_[i][cols_] = sign * row.rhs;
            basis_[i] = art_begin_ + i;
        }
    }

    bool drive_artificials_out() {
        while (true) {
            // Reduced cost of column j under cost = 1 on artificials:
            // d_j = c_j - sum over rows of c_basis * tab[i][j].
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_ && enter == cols_; ++j) {
                Rational d = j >= art_begin_ ? 1 : 0;
                for (std::size_t i = 0; i < tab_.size(); ++i) {
                    if (basis_[i] >= art_begin_) d -= tab_[i][j];
                }
                if (d < 0) enter = j;  // Bland: first improving column
            }
            if (enter == cols_) break;

            std::size_t leave = tab_.size();
            Rational best = 0;
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (tab_[i][enter] <= 0) continue;
                const Rational ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == tab_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == tab_.size()) {
                throw internal_error("phase-one objective unbounded below");
            }
            pivot(leave, enter);
        }
        Rational objective = 0;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (basis_[i] >= art_begin_) objective += tab_[i][cols_];
        }
        return objective == 0;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        const Rational p = tab_[row][col];
        for (auto& x : tab_[row]) x /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == row || tab_[i][col] == 0) continue;
            const Rational f = tab_[i][col];
            for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    std::vector<std::vector<Rational>> tab_;
    std::vector<std::size_t> basis_;
    std::size_t cols_ = 0;
    std::size_t art_begin_ = 0;
};

}  // namespace detail

// True when the system has at least one solution, decided exactly.
inline bool lp_feasible(const ConstraintSystem& sys) {
    if (sys.rows.empty()) return true;
    detail::PhaseOneTableau tableau(sys);
    return tableau.drive_artificials_out();
}

}  // namespace kcore
