#pragma once

#include "kcore/game.hpp"
#include "kcore/rational.hpp"
#include "kcore/subset.hpp"

// Small games shared across test files. All are given by explicit Moebius
// coefficients so the closed-form values they imply can be stated next to
// the tests that rely on them.
namespace fixtures {

// n=3, m(i) = 1/10, m(ij) = 1/5, m(N) = 1/10. Implied game values:
// v(i) = 1/10, v(ij) = 2/5, v(N) = 1. Monotone and infinitely monotone.
inline kcore::GameTable symmetric_game3() {
    kcore::GroundSet g{3};
    kcore::MobiusVector m(g);
    for (int i = 1; i <= 3; ++i) m[kcore::singleton(i)] = kcore::Rational(1, 10);
    m[kcore::mask_of({1, 2})] = kcore::Rational(1, 5);
    m[kcore::mask_of({1, 3})] = kcore::Rational(1, 5);
    m[kcore::mask_of({2, 3})] = kcore::Rational(1, 5);
    m[g.full()] = kcore::Rational(1, 10);
    return kcore::inverse_mobius(m);
}

// n=3, m(i) = 0, m(ij) = 1, m(N) = -1. Implied values: v(i) = 0, v(ij) = 1,
// v(N) = 2. This game is 2-monotone but not 3-monotone (the negative top
// coefficient ruins the triple-interval sums), making it a handy witness.
inline kcore::GameTable pair_bonus_game3() {
    kcore::GroundSet g{3};
    kcore::MobiusVector m(g);
    m[kcore::mask_of({1, 2})] = 1;
    m[kcore::mask_of({1, 3})] = 1;
    m[kcore::mask_of({2, 3})] = 1;
    m[g.full()] = -1;
    return kcore::inverse_mobius(m);
}

// symmetric_game3 with the top coefficient removed: m(i) = 1/10,
// m(ij) = 1/5, m(N) = 0. The game is 2-additive, so it sits inside its own
// 2-additive core as the unique vertex.
inline kcore::GameTable flat_symmetric_game3() {
    kcore::GroundSet g{3};
    kcore::MobiusVector m(g);
    for (int i = 1; i <= 3; ++i) m[kcore::singleton(i)] = kcore::Rational(1, 10);
    m[kcore::mask_of({1, 2})] = kcore::Rational(1, 5);
    m[kcore::mask_of({1, 3})] = kcore::Rational(1, 5);
    m[kcore::mask_of({2, 3})] = kcore::Rational(1, 5);
    return kcore::inverse_mobius(m);
}

// n=3 majority-style game: v(i) = 0, v(ij) = 1, v(N) = 1. Its classical
// core is empty; its 2-additive core is not.
inline kcore::GameTable flat_majority_game3() {
    kcore::GroundSet g{3};
    kcore::GameTable v(g);
    v[kcore::mask_of({1, 2})] = 1;
    v[kcore::mask_of({1, 3})] = 1;
    v[kcore::mask_of({2, 3})] = 1;
    v[g.full()] = 1;
    return v;
}

}  // namespace fixtures
