#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "subset.hpp"

namespace kcore {

// A strict total order on the nonempty coalitions of at most k players.
// Ranks are dense (0-based) and indexed by mask for O(1) comparisons; the
// inverse sequence is kept alongside because both views are hot paths.
class SubsetOrder {
public:
    SubsetOrder(GroundSet ground, int k, std::vector<Mask> sequence)
        : ground_(ground), k_(k), sequence_(std::move(sequence)),
          rank_(ground.table_size(), -1) {
        if (k_ < 1 || k_ > ground_.n)
            throw input_error("order degree must satisfy 1 <= k <= n, got k=" +
                              std::to_string(k_));
        const auto universe = subsets_up_to(ground_, k_);
        if (sequence_.size() != universe.size())
            throw input_error("order must list every coalition of size <= k exactly once");
        for (std::size_t pos = 0; pos < sequence_.size(); ++pos) {
            const Mask a = sequence_[pos];
            if (a == 0 || !ground_.contains(a) || card(a) > k_)
                throw input_error("coalition '" + format_subset(a) +
                                  "' does not belong to the order's universe");
            if (rank_[a] != -1)
                throw input_error("coalition '" + format_subset(a) + "' listed twice");
            rank_[a] = static_cast<int>(pos);
        }
    }

    const GroundSet& ground() const { return ground_; }
    int k() const { return k_; }
    const std::vector<Mask>& sequence() const { return sequence_; }

    int position(Mask a) const {
        const int r = rank_[a];
        if (r < 0)
            throw input_error("coalition '" + format_subset(a) +
                              "' is not ranked by this order");
        return r;
    }

    // a strictly before b
    bool before(Mask a, Mask b) const { return position(a) < position(b); }

    bool ranks(Mask a) const {
        return a != 0 && ground_.contains(a) && card(a) <= k_;
    }

private:
    GroundSet ground_;
    int k_;
    std::vector<Mask> sequence_;
    std::vector<int> rank_;
};

// Orders coalitions by the integer their indicator bits spell out. The mask
// encoding makes that integer the mask itself.
inline SubsetOrder binary_order(const GroundSet& ground, int k) {
    if (k < 1 || k > ground.n)
        throw input_error("binary order needs 1 <= k <= n, got k=" + std::to_string(k));
    return SubsetOrder(ground, k, subsets_up_to(ground, k));
}

// Degree-1 orders are exactly the permutations of the players.
inline SubsetOrder order_from_permutation(const GroundSet& ground,
                                          const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != ground.n)
        throw input_error("permutation must list all " + std::to_string(ground.n) +
                          " players");
    std::vector<bool> seen(ground.n + 1, false);
    std::vector<Mask> sequence;
    for (int p : perm) {
        if (p < 1 || p > ground.n || seen[p])
            throw input_error("not a permutation of 1.." + std::to_string(ground.n));
        seen[p] = true;
        sequence.push_back(singleton(p));
    }
    return SubsetOrder(ground, 1, sequence);
}

enum class ViolationKind { containment, union_shift };

struct OrderViolation {
    ViolationKind kind;
    // For containment: a is a proper subset of b yet ranked after it (c unused).
    // For union_shift: the relative order of a and b flips after adding c.
    Mask a = 0, b = 0, c = 0;
};

struct CompatibilityReport {
    bool subset_compatible = true;
    bool compatible = true;
    bool strongly_compatible = true;
    std::optional<OrderViolation> witness;
};

// Full classification. The union condition is an iff, so both implications
// get their own scan: order shifts forward under a disjoint union, and any
// shift observed after the union must already hold before it.
inline CompatibilityReport classify(const SubsetOrder& order) {
    CompatibilityReport report;
    const auto& universe = order.sequence();
    const Mask full = order.ground().full();

    auto record = [&](ViolationKind kind, Mask a, Mask b, Mask c) {
        if (!report.witness) report.witness = OrderViolation{kind, a, b, c};
    };

    for (Mask b : universe) {
        bool done = false;
        for_each_submask(b, [&](Mask a) {
            if (done || a == 0 || a == b) return;
            if (order.before(b, a)) {
                report.subset_compatible = false;
                record(ViolationKind::containment, a, b, 0);
                done = true;
            }
        });
        if (!report.subset_compatible) break;
    }

    for (Mask a : universe) {
        for (Mask b : universe) {
            if (a == b) continue;
            const Mask free = full & ~(a | b);
            bool done = false;
            for_each_submask(free, [&](Mask c) {
                if (done || c == 0) return;
                if (!order.ranks(a | c) || !order.ranks(b | c)) return;
                const bool plain = order.before(a, b);
                const bool shifted = order.before(a | c, b | c);
                if (plain != shifted) {
                    report.compatible = false;
                    record(ViolationKind::union_shift, a, b, c);
                    done = true;
                }
            });
            if (!report.compatible) break;
        }
        if (!report.compatible) break;
    }

    report.strongly_compatible = report.compatible && report.subset_compatible;
    return report;
}

namespace detail {

// Lexicographic comparison of equal-size coalitions after relabeling players
// by their position in base_perm.
inline bool lex_less(Mask a, Mask b, const std::vector<int>& player_pos) {
    auto ea = elements(a);
    auto eb = elements(b);
    for (int& x : ea) x = player_pos[x];
    for (int& x : eb) x = player_pos[x];
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

} // namespace detail

// Cardinality-first order with lexicographic tie break under base_perm.
//
// The two optional knobs generalize the plain block order:
//  * inner: coalitions inside this block come first (default: everything);
//    coalitions meeting the complement are spliced in afterwards, by taking
//    each outside part D in turn and unioning it over the inner sequence.
//  * deferred: one inner coalition pushed to the end of the inner block.
// With the defaults the result is the plain cardinality-lex order, which is
// strongly compatible. With the knobs it reproduces the deferred-coalition
// construction; note that deferring pushes a coalition past larger ones, so
// the result is never inclusion-respecting and, from degree 3 up, can lose
// plain compatibility as well (see the tests for a concrete flip).
inline SubsetOrder lexicographic_block_order(const GroundSet& ground, int k,
                                             const std::vector<int>& base_perm,
                                             Mask inner_block = 0, Mask deferred = 0) {
    if (k < 1 || k > ground.n)
        throw input_error("block order needs 1 <= k <= n, got k=" + std::to_string(k));
    if (static_cast<int>(base_perm.size()) != ground.n)
        throw input_error("base permutation must list all players");
    std::vector<int> player_pos(ground.n + 1, 0);
    std::vector<bool> seen(ground.n + 1, false);
    for (std::size_t i = 0; i < base_perm.size(); ++i) {
        const int p = base_perm[i];
        if (p < 1 || p > ground.n || seen[p])
            throw input_error("not a permutation of 1.." + std::to_string(ground.n));
        seen[p] = true;
        player_pos[p] = static_cast<int>(i);
    }
    const Mask inner = inner_block == 0 ? ground.full() : inner_block;
    if (!ground.contains(inner))
        throw input_error("inner block lies outside the ground set");
    if (deferred != 0 && ((deferred & ~inner) != 0 || card(deferred) > k))
        throw input_error("deferred coalition must live inside the inner block");

    auto card_lex = [&](Mask x, Mask y) {
        if (card(x) != card(y)) return card(x) < card(y);
        return detail::lex_less(x, y, player_pos);
    };

    std::vector<Mask> inner_seq;
    for (Mask a = 1; a <= ground.full(); ++a)
        if ((a & ~inner) == 0 && card(a) <= k && a != deferred) inner_seq.push_back(a);
    std::sort(inner_seq.begin(), inner_seq.end(), card_lex);
    if (deferred != 0) inner_seq.push_back(deferred);

    std::vector<Mask> sequence = inner_seq;
    const Mask outside = ground.full() & ~inner;
    if (outside != 0) {
        std::vector<Mask> parts;
        for (Mask d = 1; d <= outside; ++d)
            if ((d & ~outside) == 0 && card(d) <= k) parts.push_back(d);
        std::sort(parts.begin(), parts.end(), card_lex);
        for (Mask d : parts) {
            sequence.push_back(d);  // the empty set heads the augmented inner sequence
            for (Mask s : inner_seq)
                if (card(s | d) <= k) sequence.push_back(s | d);
        }
    }
    return SubsetOrder(ground, k, sequence);
}

enum class OrderFilter { all, compatible, strongly_compatible };

struct OrderEnumeration {
    std::vector<SubsetOrder> orders;
    bool truncated = false;
};

namespace detail {

// Shared by the enumerator: does the partial rank assignment (masks in
// increasing mask order, first `assigned` of `universe` placed) already
// contradict the filter? Only fully decided comparisons are consulted, so a
// pruned branch can never contain a qualifying completion.
inline bool partial_violates(const std::vector<int>& rank, const std::vector<Mask>& universe,
                             std::size_t assigned, Mask full, int k, OrderFilter filter) {
    if (filter == OrderFilter::all) return false;
    const Mask last = universe[assigned - 1];
    if (filter == OrderFilter::strongly_compatible) {
        // Masks are assigned in increasing mask value, so every proper subset
        // of `last` already has a rank.
        bool bad = false;
        for_each_submask(last, [&](Mask s) {
            if (s != 0 && s != last && rank[s] > rank[last]) bad = true;
        });
        if (bad) return true;
    }
    for (std::size_t i = 0; i < assigned; ++i) {
        for (std::size_t j = 0; j < assigned; ++j) {
            if (i == j) continue;
            const Mask a = universe[i], b = universe[j];
            const Mask free = full & ~(a | b);
            bool bad = false;
            for_each_submask(free, [&](Mask c) {
                if (bad || c == 0) return;
                const Mask ac = a | c, bc = b | c;
                if (card(ac) > k || card(bc) > k) return;
                if (rank[ac] < 0 || rank[bc] < 0) return;
                if ((rank[a] < rank[b]) != (rank[ac] < rank[bc])) bad = true;
            });
            if (bad) return true;
        }
    }
    return false;
}

} // namespace detail

// All strict total orders on the coalition universe passing the filter, in
// lexicographic order of their rank arrays (universe listed by mask value).
//
// A universe of u coalitions has u! orders, so full enumeration is only
// attempted for u <= 7. Above that a positive cap is mandatory and the
// search backtracks with violation pruning; hitting the cap sets the
// truncated flag. Universes past 18 coalitions are refused outright.
inline OrderEnumeration enumerate_orders(const GroundSet& ground, int k,
                                         OrderFilter filter, std::size_t cap = 0) {
    if (k < 1 || k > ground.n)
        throw input_error("enumeration needs 1 <= k <= n, got k=" + std::to_string(k));
    const auto universe = subsets_up_to(ground, k);
    const std::size_t u = universe.size();
    if (u > 18)
        throw guard_error("order universe has " + std::to_string(u) +
                          " coalitions; enumeration is refused above 18");
    if (u > 7 && cap == 0)
        throw guard_error("order universe has " + std::to_string(u) +
                          " coalitions; pass a positive cap to enumerate");

    OrderEnumeration out;
    const Mask full = ground.full();

    auto qualifies = [&](const SubsetOrder& order) {
        if (filter == OrderFilter::all) return true;
        const auto report = classify(order);
        return filter == OrderFilter::compatible ? report.compatible
                                                 : report.strongly_compatible;
    };

    if (u <= 7) {
        std::vector<int> ranks(u);
        for (std::size_t i = 0; i < u; ++i) ranks[i] = static_cast<int>(i);
        do {
            std::vector<Mask> sequence(u);
            for (std::size_t i = 0; i < u; ++i) sequence[ranks[i]] = universe[i];
            SubsetOrder order(ground, k, std::move(sequence));
            if (!qualifies(order)) continue;
            if (cap != 0 && out.orders.size() == cap) {
                out.truncated = true;
                return out;
            }
            out.orders.push_back(std::move(order));
        } while (std::next_permutation(ranks.begin(), ranks.end()));
        return out;
    }

    std::vector<int> rank(ground.table_size(), -1);
    std::vector<bool> used(u, false);
    auto dfs = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == u) {
            std::vector<Mask> sequence(u);
            for (std::size_t i = 0; i < u; ++i) sequence[rank[universe[i]]] = universe[i];
            SubsetOrder order(ground, k, std::move(sequence));
            if (!qualifies(order)) return true;
            if (out.orders.size() == cap) {
                out.truncated = true;
                return false;
            }
            out.orders.push_back(std::move(order));
            return true;
        }
        for (std::size_t r = 0; r < u; ++r) {
            if (used[r]) continue;
            rank[universe[pos]] = static_cast<int>(r);
            used[r] = true;
            const bool keep_going =
                detail::partial_violates(rank, universe, pos + 1, full, k, filter)
                    ? true
                    : self(self, pos + 1);
            used[r] = false;
            rank[universe[pos]] = -1;
            if (!keep_going) return false;
        }
        return true;
    };
    dfs(dfs, 0);
    return out;
}

} // namespace kcore
