#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "subset.hpp"

namespace kcore {

// A game: worth of every coalition, indexed densely by mask. v(empty) = 0.
struct GameTable {
    GroundSet ground;
    std::vector<Rational> values;

    explicit GameTable(GroundSet g) : ground(g), values(g.table_size(), Rational(0)) {}

    const Rational& operator[](Mask a) const { return values[a]; }
    Rational& operator[](Mask a) { return values[a]; }
};

// Mobius coefficients of a game, same dense layout. coeffs[empty] stays 0.
struct MobiusVector {
    GroundSet ground;
    std::vector<Rational> coeffs;

    explicit MobiusVector(GroundSet g) : ground(g), coeffs(g.table_size(), Rational(0)) {}

    const Rational& operator[](Mask a) const { return coeffs[a]; }
    Rational& operator[](Mask a) { return coeffs[a]; }
};

// m(A) = sum over B below A of (-1)^{|A minus B|} v(B), computed by the
// in-place bitwise transform rather than the double subset loop.
inline MobiusVector mobius_transform(const GameTable& v) {
    if (v.values[0] != 0)
        throw input_error("game tables must assign 0 to the empty coalition");
    MobiusVector m(v.ground);
    m.coeffs = v.values;
    const std::size_t size = v.ground.table_size();
    for (int bit = 0; bit < v.ground.n; ++bit) {
        const Mask b = Mask{1} << bit;
        for (std::size_t a = 0; a < size; ++a)
            if (a & b) m.coeffs[a] -= m.coeffs[a ^ b];
    }
    return m;
}

// v(A) = sum of m(B) over B below A; the zeta transform inverts the above.
inline GameTable inverse_mobius(const MobiusVector& m) {
    if (m.coeffs[0] != 0)
        throw input_error("coefficient of the empty set must be 0");
    GameTable v(m.ground);
    v.values = m.coeffs;
    const std::size_t size = m.ground.table_size();
    for (int bit = 0; bit < m.ground.n; ++bit) {
        const Mask b = Mask{1} << bit;
        for (std::size_t a = 0; a < size; ++a)
            if (a & b) v.values[a] += v.values[a ^ b];
    }
    return v;
}

// Monotonicity via coefficient sums: v is monotone exactly when, for every
// coalition B and every member i, the m-values over {L : i in L, L within B}
// add up to something nonnegative.
inline bool is_monotone(const GameTable& v) {
    const MobiusVector m = mobius_transform(v);
    const Mask full = v.ground.full();
    for (Mask b = 1; b <= full; ++b) {
        for (int i : elements(b)) {
            const Mask pivot = singleton(i);
            Rational sum = 0;
            for_each_submask(b ^ pivot, [&](Mask rest) { sum += m[rest | pivot]; });
            if (sum < 0) return false;
        }
    }
    return true;
}

// The definitional check, kept alongside the coefficient route so the two
// can be played against each other.
inline bool is_monotone_pairwise(const GameTable& v) {
    const Mask full = v.ground.full();
    for (Mask b = 1; b <= full; ++b) {
        bool ok = true;
        for_each_submask(b, [&](Mask a) {
            if (v[a] > v[b]) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

// k-monotone exactly when every interval sum m([A,B]) with 2 <= |A| <= k is
// nonnegative.
inline bool is_k_monotone(const GameTable& v, int k) {
    if (k < 2 || k > v.ground.n)
        throw input_error("k-monotonicity needs 2 <= k <= n, got k=" + std::to_string(k));
    const MobiusVector m = mobius_transform(v);
    const Mask full = v.ground.full();
    for (Mask b = 1; b <= full; ++b) {
        if (card(b) < 2) continue;
        bool ok = true;
        for_each_submask(b, [&](Mask a) {
            if (!ok) return;
            const int ca = card(a);
            if (ca < 2 || ca > k) return;
            Rational sum = 0;
            for_each_superset(a, b, [&](Mask l) { sum += m[l]; });
            if (sum < 0) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

// Monotonicity of every order at once. On n players the order-n interval
// conditions cover every lower order and nothing new appears above n, so a
// single scan at the top order decides it. Checking only up to n-2 would
// miss games that hide a negative coefficient behind zero mid-layers: with
// m(ij) = 1 and m(N) = -1 every short interval still sums to 0 or more, yet
// the interval [N, N] is negative.
inline bool is_infinitely_monotone(const GameTable& v) {
    if (v.ground.n < 2) return true;
    return is_k_monotone(v, v.ground.n);
}

// Largest coalition size carrying a nonzero coefficient.
inline int additivity_degree(const MobiusVector& m) {
    int degree = 0;
    const Mask full = m.ground.full();
    for (Mask a = 1; a <= full; ++a)
        if (m[a] != 0) degree = std::max(degree, card(a));
    if (degree == 0)
        throw input_error("additivity degree is undefined for the zero vector");
    return degree;
}

// Range the coefficient of an a-element coalition can occupy in a monotone
// game, as a multiple of v(N). The binomial indices split by a mod 4; two
// residues admit a second equivalent index, recorded in *_alt.
struct MobiusBound {
    int a = 0;
    Rational lower, upper;
    int l = 0;
    int l_prime = 0;
    std::optional<int> l_alt;
    std::optional<int> l_prime_alt;
};

inline MobiusBound mobius_bounds(int a, const Rational& vN) {
    if (a < 1)
        throw input_error("coalition size must be at least 1, got " + std::to_string(a));
    MobiusBound bound;
    bound.a = a;
    switch (a % 4) {
        case 0:
            bound.l = a / 2;
            bound.l_prime = a / 2 - 1;
            break;
        case 1:
            bound.l = (a - 1) / 2;
            bound.l_prime = (a - 3) / 2;
            bound.l_prime_alt = (a + 1) / 2;
            break;
        case 2:
            bound.l = a / 2 - 1;
            bound.l_prime = a / 2;
            break;
        case 3:
            bound.l = (a - 3) / 2;
            bound.l_alt = (a + 1) / 2;
            bound.l_prime = (a - 1) / 2;
            break;
    }
    bound.upper = binomial(a - 1, bound.l) * vN;
    bound.lower = -binomial(a - 1, bound.l_prime) * vN;
    return bound;
}

// v(B) = 1 exactly when B covers A.
inline GameTable unanimity_game(const GroundSet& ground, Mask a) {
    if (a == 0)
        throw input_error("unanimity games need a nonempty center");
    if (!ground.contains(a))
        throw input_error("unanimity center lies outside the ground set");
    GameTable v(ground);
    for_each_superset(a, ground.full(), [&](Mask b) { v[b] = 1; });
    return v;
}

// Deterministic generator of games with nonnegative coefficients up to size
// k_cap. Nonnegative coefficients make the result monotone and k-monotone
// for every k, which is what downstream samplers rely on.
//
// Raw engine output is mapped with %, not with a distribution object, so the
// same seed produces the same game on every platform.
inline GameTable random_totally_monotone_game(std::uint64_t seed, int n, int k_cap) {
    if (k_cap < 1)
        throw input_error("coefficient cap must be at least 1");
    GroundSet ground(n);
    std::mt19937_64 rng(seed);
    MobiusVector m(ground);
    bool any = false;
    for (Mask a = 1; a <= ground.full(); ++a) {
        if (card(a) > k_cap) continue;
        if (rng() % 2 == 0) continue;  // keep the support sparse
        const std::uint64_t numerator = rng() % 8 + 1;
        const std::uint64_t denominator = rng() % 12 + 1;
        m[a] = Rational(numerator, denominator);
        any = true;
    }
    if (!any) m[singleton(1)] = 1;
    return inverse_mobius(m);
}

} // namespace kcore
