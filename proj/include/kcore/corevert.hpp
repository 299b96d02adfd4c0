#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kcore/achievable.hpp"
#include "kcore/constraints.hpp"
#include "kcore/errors.hpp"
#include "kcore/game.hpp"
#include "kcore/linalg.hpp"
#include "kcore/oracle.hpp"
#include "kcore/order.hpp"
#include "kcore/rational.hpp"
#include "kcore/subset.hpp"

namespace kcore {

// The coefficient vector each order induces from a game: the coefficient at
// a ranked coalition B collects the game's Moebius mass over the whole
// achievable family of B, and coalitions with empty families get 0. The
// nonempty families partition the nonempty coalitions, so the total mass
// v(N) is always preserved, whatever the order.
inline MobiusVector induced_game(const FamilyAtlas& atlas, const GameTable& v) {
    const MobiusVector m = mobius_transform(v);
    MobiusVector out(v.ground);
    for (const auto& [b, family] : atlas.families) {
        Rational sum = 0;
        for (Mask a : family.members) sum += m[a];
        out[b] = sum;
    }
    return out;
}

inline MobiusVector induced_game(const SubsetOrder& order, const GameTable& v) {
    if (order.ground().n != v.ground.n) throw input_error("order and game use different ground sets");
    return induced_game(build_atlas(order), v);
}

// For a compatible order, the induced game agrees with the original game on
// every family top. Returns false on the first failing top; demands lattice
// families, since otherwise there is no top to test.
inline bool check_top_equalities(const SubsetOrder& order, const GameTable& v) {
    if (order.ground().n != v.ground.n) throw input_error("order and game use different ground sets");
    const auto atlas = build_atlas(order);
    const GameTable induced = inverse_mobius(induced_game(atlas, v));
    for (const auto& [b, family] : atlas.families) {
        if (family.empty()) continue;
        if (!family.top) {
            throw structure_error("family of '" + format_subset(b) +
                                  "' has no top; top equalities need lattice families");
        }
        if (induced[*family.top] != v[*family.top]) return false;
    }
    return true;
}

// v* dominates v: at least as good on every coalition, equal on the grand
// coalition.
inline bool dominates(const GameTable& v_star, const GameTable& v) {
    if (v_star.ground.n != v.ground.n) throw input_error("games use different ground sets");
    const Mask full = v.ground.full();
    if (v_star[full] != v[full]) return false;
    for (Mask a = 1; a < full; ++a) {
        if (v_star[a] < v[a]) return false;
    }
    return true;
}

// Outcome of testing one candidate point against one constraint system.
// is_vertex demands feasibility plus tight rows of full rank; an infeasible
// point instead carries the first violated row as a witness. `guaranteed`
// records whether the theorem hypothesis behind the candidate held (it is
// only ever cleared by order_vertices).
struct VertexCertificate {
    MobiusVector point;
    CoreVariant variant = CoreVariant::plain;
    std::vector<std::size_t> tight_rows;
    int rank = 0;
    bool feasible = false;
    bool is_vertex = false;
    std::optional<std::size_t> violated_row;
    bool guaranteed = true;

    explicit VertexCertificate(MobiusVector p) : point(std::move(p)) {}
};

inline VertexCertificate verify_vertex(const MobiusVector& m_star, const GameTable& v, int k,
                                       CoreVariant variant) {
    if (m_star.ground.n != v.ground.n) throw input_error("point and game use different ground sets");
    for (Mask a = 1; a < m_star.ground.table_size(); ++a) {
        if (m_star.coeffs[a] != 0 && card(a) > k) {
            throw input_error("candidate point has a coefficient of degree above k on '" +
                              format_subset(a) + "'");
        }
    }

    const auto sys = core_constraints(v, k, variant);
    const auto x = coordinates(sys, m_star);

    VertexCertificate cert(m_star);
    cert.variant = variant;
    cert.violated_row = first_violated_row(sys, x);
    cert.feasible = !cert.violated_row.has_value();

    Matrix tight;
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        if (row_value(sys.rows[r], x) == sys.rows[r].rhs) {
            cert.tight_rows.push_back(r);
            tight.push_back(sys.rows[r].coeffs);
        }
    }
    cert.rank = matrix_rank(tight);
    cert.is_vertex = cert.feasible && cert.rank == static_cast<int>(sys.num_vars());
    return cert;
}

enum class OrderRequirement { strongly_compatible, compatible };

// What a scan over order-induced points produced. hypothesis_holds records
// (k+1)-monotonicity of the game; when it fails the points are still listed
// but each certificate is marked not guaranteed.
struct OrderVertexScan {
    std::vector<VertexCertificate> certificates;
    bool truncated = false;
    bool hypothesis_holds = true;
    std::size_t orders_seen = 0;
};

// Induces one candidate point per enumerated order, deduplicates exact
// coefficient vectors, and certifies each distinct point. Strongly
// compatible orders promise vertices of the plain polyhedron, merely
// compatible ones only of the infinite-monotone variant, so the
// certification target follows the requirement.
inline OrderVertexScan order_vertices(const GameTable& v, int k, OrderRequirement require,
                                      std::size_t cap = 0, int threads = 1) {
    if (threads < 1) throw input_error("threads must be at least 1");
    const GroundSet g = v.ground;
    const bool strong = require == OrderRequirement::strongly_compatible;
    const auto enumeration = enumerate_orders(
        g, k, strong ? OrderFilter::strongly_compatible : OrderFilter::compatible, cap);

    OrderVertexScan scan;
    scan.truncated = enumeration.truncated;
    scan.hypothesis_holds = k >= g.n ? true : is_k_monotone(v, k + 1);

    const CoreVariant variant = strong ? CoreVariant::plain : CoreVariant::infinite;
    std::set<std::vector<Rational>> seen;
    std::vector<MobiusVector> points;
    for (const auto& order : enumeration.orders) {
        ++scan.orders_seen;
        MobiusVector m = induced_game(order, v);
        if (seen.insert(m.coeffs).second) points.push_back(std::move(m));
    }

    // Certification is pure per point, so it splits across workers; results
    // land by index, keeping output independent of the thread count.
    std::vector<std::optional<VertexCertificate>> certified(points.size());
    std::vector<std::exception_ptr> failures(points.size());
    auto certify = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                certified[i] = verify_vertex(points[i], v, k, variant);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(points.size(), 1));
    if (workers <= 1) {
        certify(0, points.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (points.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(points.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(certify, begin, end);
        }
        for (auto& worker : pool) worker.join();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    for (auto& cert : certified) {
        cert->guaranteed = scan.hypothesis_holds;
        scan.certificates.push_back(std::move(*cert));
    }
    return scan;
}

// Solves the top-equality system by pure forward substitution: one equation
// v*(top(B)) = v(top(B)) per coalition B with a nonempty family, one
// variable m*(B) each, coefficient 1 on the diagonal. Variables with empty
// families are pinned to 0. The substitution order is deterministic: among
// the unsolved equations whose other variables are already known, the one
// whose center comes first in the binary order relabeled by singleton rank
// (the ordering that makes the system literally lower-triangular for
// compatible orders) is solved next. If no equation is ready the system is
// not triangular in any variable order, which happens exactly when some
// family fails to be a lattice, and is reported as a structure error.
inline MobiusVector triangular_solve(const SubsetOrder& order, const GameTable& v) {
    const GroundSet g = order.ground();
    if (g.n != v.ground.n) throw input_error("order and game use different ground sets");
    const auto atlas = build_atlas(order);

    // Relabel players so singleton ranks ascend, then order centers by the
    // relabeled mask value.
    std::vector<int> players(static_cast<std::size_t>(g.n));
    std::iota(players.begin(), players.end(), 1);
    std::sort(players.begin(), players.end(), [&](int a, int b) {
        return order.position(singleton(a)) < order.position(singleton(b));
    });
    std::vector<int> new_bit(static_cast<std::size_t>(g.n) + 1, 0);
    for (std::size_t idx = 0; idx < players.size(); ++idx) {
        new_bit[players[idx]] = static_cast<int>(idx);
    }
    const auto relabeled = [&](Mask a) {
        Mask out = 0;
        for (int i : elements(a)) out |= Mask{1} << new_bit[i];
        return out;
    };

    std::vector<Mask> pending;
    for (const auto& [b, family] : atlas.families) {
        if (family.empty()) continue;
        if (!family.top) {
            throw structure_error("family of '" + format_subset(b) +
                                  "' has no top; the top-equality system needs lattice families");
        }
        pending.push_back(b);
    }
    std::sort(pending.begin(), pending.end(),
              [&](Mask a, Mask b) { return relabeled(a) < relabeled(b); });

    MobiusVector out(v.ground);
    std::vector<char> solved(g.table_size(), 0);
    const auto ready = [&](Mask b) {
        const Mask top = *atlas.families.at(b).top;
        bool ok = true;
        for_each_submask(top, [&](Mask sub) {
            if (!ok || sub == 0 || sub == b || card(sub) > order.k()) return;
            if (!atlas.families.at(sub).empty() && !solved[sub]) ok = false;
        });
        return ok;
    };

    while (!pending.empty()) {
        auto next = std::find_if(pending.begin(), pending.end(), ready);
        if (next == pending.end()) {
            throw structure_error("top-equality system is not triangular in any variable order");
        }
        const Mask b = *next;
        pending.erase(next);
        const Mask top = *atlas.families.at(b).top;
        Rational value = v[top];
        for_each_submask(top, [&](Mask sub) {
            if (sub == 0 || sub == b || card(sub) > order.k()) return;
            value -= out[sub];  // deleted variables contribute their pinned 0
        });
        out[b] = value;
        solved[b] = 1;
    }
    return out;
}

// Closed-form vertex list of the (n-1)-additive polyhedron, split on the
// sign of the game's top Moebius coefficient. Each emitted point spreads
// the top coefficient over the supersets of one seed coalition B0 with
// alternating signs, which must cancel it exactly at N; that cancellation
// is checked, not assumed, and every point is then independently certified.
inline std::vector<VertexCertificate> vertices_n_minus_1(const GameTable& v) {
    const GroundSet g = v.ground;
    if (g.n < 2) throw input_error("the degree-(n-1) construction needs at least two players");
    const int k = g.n - 1;
    const MobiusVector m = mobius_transform(v);
    const Rational top = m[g.full()];

    std::vector<VertexCertificate> out;
    if (top == 0) {
        // The game itself already has degree n-1 and is the single vertex.
        out.push_back(verify_vertex(m, v, k, CoreVariant::plain));
        return out;
    }

    const bool positive = top > 0;
    for (Mask b0 = 1; b0 < g.full(); ++b0) {
        const bool complement_odd = card(g.full() & ~b0) % 2 == 1;
        if (complement_odd != positive) continue;

        MobiusVector star(g);
        for (Mask a = 1; a <= g.full(); ++a) {
            star[a] = m[a];
            if ((a & b0) != b0) continue;
            Rational delta = card(a & ~b0) % 2 == 0 ? top : -top;
            if (!positive) delta = -delta;
            star[a] += delta;
        }
        if (star[g.full()] != 0) {
            throw internal_error("top coefficient failed to cancel at the grand coalition");
        }
        out.push_back(verify_vertex(star, v, k, CoreVariant::plain));
    }
    return out;
}

// An unbounded direction of the plain k-additive polyhedron. The direction
// set depends only on n and k, never on the game, so callers comparing
// games can reuse one result. Deterministic: the canonically smallest
// extreme direction is returned.
struct Ray {
    MobiusVector direction;

    explicit Ray(MobiusVector d) : direction(std::move(d)) {}
};

inline std::optional<Ray> find_ray(const GameTable& v, int k,
                                   const OracleGuard& guard = OracleGuard{}) {
    const auto sys = core_constraints(v, k, CoreVariant::plain);
    detail::check_guard(sys, guard);
    const auto rays = detail::ray_directions(sys);
    if (rays.empty()) return std::nullopt;
    return Ray(from_coordinates(sys, *rays.begin()));
}

}  // namespace kcore
