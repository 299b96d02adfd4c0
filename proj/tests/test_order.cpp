#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "kcore/order.hpp"

using namespace kcore;

namespace {

// Independent compatibility scan: plain loops over raw masks, no shared
// helpers with the library. Returns {subset_compatible, compatible}.
std::pair<bool, bool> brute_flags(const SubsetOrder& order) {
    const Mask full = order.ground().full();
    const int k = order.k();
    bool subset_ok = true, union_ok = true;
    for (Mask a = 1; a <= full; ++a) {
        if (card(a) > k) continue;
        for (Mask b = 1; b <= full; ++b) {
            if (card(b) > k || a == b) continue;
            if ((a & b) == a && order.before(b, a)) subset_ok = false;  // a inside b
            for (Mask c = 1; c <= full; ++c) {
                if ((c & (a | b)) != 0) continue;
                if (card(a | c) > k || card(b | c) > k) continue;
                if (order.before(a, b) != order.before(a | c, b | c)) union_ok = false;
            }
        }
    }
    return {subset_ok, union_ok};
}

SubsetOrder make_order(int n, int k, const std::vector<std::vector<int>>& seq) {
    std::vector<Mask> masks;
    for (const auto& coalition : seq) {
        Mask m = 0;
        for (int i : coalition) m |= singleton(i);
        masks.push_back(m);
    }
    return SubsetOrder(GroundSet(n), k, masks);
}

} // namespace

TEST_CASE("orders validate their coalition sequence") {
    GroundSet g(3);
    CHECK_THROWS_AS(SubsetOrder(g, 2, {1, 2, 3}), input_error);           // too short
    CHECK_THROWS_AS(SubsetOrder(g, 2, {1, 2, 3, 3, 5, 6}), input_error);  // duplicate
    CHECK_THROWS_AS(SubsetOrder(g, 2, {1, 2, 3, 4, 5, 7}), input_error);  // 7 too big
    CHECK_THROWS_AS(SubsetOrder(g, 0, {}), input_error);
    CHECK_THROWS_AS(SubsetOrder(g, 4, {}), input_error);

    const auto order = binary_order(g, 2);
    CHECK(order.position(mask_of({1, 2})) == 2);
    CHECK(order.before(singleton(3), mask_of({2, 3})));
    CHECK_FALSE(order.ranks(g.full()));
    CHECK_THROWS_AS(order.position(g.full()), input_error);
}

TEST_CASE("the binary order ranks by indicator value") {
    GroundSet g5(5);
    const auto order = binary_order(g5, 2);
    // {1,3} carries indicator 5, {4} carries 8.
    CHECK(order.before(mask_of({1, 3}), mask_of({4})));

    const auto full4 = binary_order(GroundSet(4), 4);
    const std::vector<Mask> expected_prefix{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<Mask> prefix(full4.sequence().begin(), full4.sequence().begin() + 8);
    CHECK(prefix == expected_prefix);

    const auto k1 = binary_order(GroundSet(3), 1);
    CHECK(k1.sequence() == std::vector<Mask>{1, 2, 4});

    CHECK_THROWS_AS(binary_order(g5, 0), input_error);
    CHECK_THROWS_AS(binary_order(g5, 6), input_error);
}

TEST_CASE("binary orders are strongly compatible across small sizes") {
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= n; ++k) {
            const auto report = classify(binary_order(GroundSet(n), k));
            CHECK(report.strongly_compatible);
            CHECK_FALSE(report.witness.has_value());
        }
}

TEST_CASE("classification separates the three compatibility notions") {
    // Compatible but not inclusion-respecting: the pair {1,3} outranks the
    // singleton {3}.
    const auto order = make_order(3, 2, {{1}, {2}, {1, 2}, {1, 3}, {2, 3}, {3}});
    const auto report = classify(order);
    CHECK(report.compatible);
    CHECK_FALSE(report.subset_compatible);
    CHECK_FALSE(report.strongly_compatible);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->kind == ViolationKind::containment);
    const Mask sub = report.witness->a, sup = report.witness->b;
    CHECK((sub & sup) == sub);
    CHECK(order.before(sup, sub));

    const auto [subset_ok, union_ok] = brute_flags(order);
    CHECK(union_ok);
    CHECK_FALSE(subset_ok);
}

TEST_CASE("a relabeling that flips under unions is caught") {
    // 3 comes before 2, yet joining 1 gives {1,2} before {1,3}.
    const auto order = make_order(
        4, 2, {{1}, {3}, {2}, {1, 2}, {2, 3}, {1, 3}, {4}, {1, 4}, {2, 4}, {3, 4}});
    const auto report = classify(order);
    CHECK_FALSE(report.compatible);
    CHECK(report.subset_compatible);
    CHECK_FALSE(report.strongly_compatible);
    REQUIRE(report.witness.has_value());
    REQUIRE(report.witness->kind == ViolationKind::union_shift);
    // The recorded triple must actually exhibit the flip.
    const auto& w = *report.witness;
    CHECK((w.c & (w.a | w.b)) == 0);
    CHECK(order.before(w.a, w.b) != order.before(w.a | w.c, w.b | w.c));

    const auto [subset_ok, union_ok] = brute_flags(order);
    CHECK(subset_ok);
    CHECK_FALSE(union_ok);
}

TEST_CASE("classification agrees with the brute-force scan on random orders") {
    GroundSet g(4);
    const auto universe = subsets_up_to(g, 2);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        auto sequence = universe;
        for (std::size_t i = sequence.size(); i > 1; --i)
            std::swap(sequence[i - 1], sequence[rng() % i]);
        const SubsetOrder order(g, 2, sequence);
        const auto report = classify(order);
        const auto [subset_ok, union_ok] = brute_flags(order);
        REQUIRE(report.subset_compatible == subset_ok);
        REQUIRE(report.compatible == union_ok);
        REQUIRE(report.strongly_compatible == (subset_ok && union_ok));
    }
}

TEST_CASE("singleton orders are permutations and always strongly compatible") {
    GroundSet g(3);
    const auto identity = order_from_permutation(g, {1, 2, 3});
    CHECK(identity.sequence() == std::vector<Mask>{1, 2, 4});
    const auto reversed = order_from_permutation(g, {3, 2, 1});
    CHECK(reversed.sequence() == std::vector<Mask>{4, 2, 1});

    CHECK_THROWS_AS(order_from_permutation(g, {1, 2}), input_error);
    CHECK_THROWS_AS(order_from_permutation(g, {1, 2, 2}), input_error);
    CHECK_THROWS_AS(order_from_permutation(g, {1, 2, 4}), input_error);
    CHECK_THROWS_AS(order_from_permutation(g, {0, 1, 2}), input_error);

    for (int n = 2; n <= 5; ++n) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i + 1;
        do {
            const auto report = classify(order_from_permutation(GroundSet(n), perm));
            REQUIRE(report.strongly_compatible);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("full enumeration covers every order exactly once") {
    GroundSet g(3);
    const auto all = enumerate_orders(g, 2, OrderFilter::all);
    CHECK(all.orders.size() == 720);
    CHECK_FALSE(all.truncated);

    std::set<std::vector<Mask>> distinct;
    for (const auto& order : all.orders) distinct.insert(order.sequence());
    CHECK(distinct.size() == 720);

    // Emission follows the lexicographic order of rank arrays.
    std::vector<std::vector<int>> rank_arrays;
    for (const auto& order : all.orders) {
        std::vector<int> ranks;
        for (Mask a : subsets_up_to(g, 2)) ranks.push_back(order.position(a));
        rank_arrays.push_back(ranks);
    }
    CHECK(std::is_sorted(rank_arrays.begin(), rank_arrays.end()));

    const auto k1 = enumerate_orders(g, 1, OrderFilter::strongly_compatible);
    CHECK(k1.orders.size() == 6);
}

TEST_CASE("filters agree with per-order classification") {
    GroundSet g(3);
    const auto all = enumerate_orders(g, 2, OrderFilter::all);
    std::size_t compatible_count = 0, strong_count = 0;
    std::set<std::vector<Mask>> compatible_set, strong_set;
    for (const auto& order : all.orders) {
        const auto report = classify(order);
        if (report.compatible) {
            ++compatible_count;
            compatible_set.insert(order.sequence());
        }
        if (report.strongly_compatible) {
            ++strong_count;
            strong_set.insert(order.sequence());
        }
    }

    const auto compatible = enumerate_orders(g, 2, OrderFilter::compatible);
    REQUIRE(compatible.orders.size() == compatible_count);
    for (const auto& order : compatible.orders) {
        CHECK(compatible_set.count(order.sequence()) == 1);
        CHECK(classify(order).compatible);
    }

    const auto strong = enumerate_orders(g, 2, OrderFilter::strongly_compatible);
    REQUIRE(strong.orders.size() == strong_count);
    for (const auto& order : strong.orders)
        CHECK(strong_set.count(order.sequence()) == 1);
    CHECK(strong_count <= compatible_count);
    CHECK(strong_count >= 1);  // the binary order is always there
}

TEST_CASE("caps truncate instead of failing") {
    GroundSet g(3);
    const auto capped = enumerate_orders(g, 2, OrderFilter::all, 10);
    CHECK(capped.orders.size() == 10);
    CHECK(capped.truncated);

    const auto generous = enumerate_orders(g, 2, OrderFilter::all, 100000);
    CHECK(generous.orders.size() == 720);
    CHECK_FALSE(generous.truncated);
}

TEST_CASE("large universes demand a cap and refuse outright past the guard") {
    GroundSet g4(4);
    // 10 coalitions of size <= 2: backtracking territory.
    CHECK_THROWS_AS(enumerate_orders(g4, 2, OrderFilter::all), guard_error);
    CHECK_THROWS_AS(enumerate_orders(GroundSet(6), 3, OrderFilter::all, 5), guard_error);

    const auto first = enumerate_orders(g4, 2, OrderFilter::all, 20);
    REQUIRE(first.orders.size() == 20);
    CHECK(first.truncated);

    // The backtracking path must emit the same lex-ordered prefix the
    // exhaustive path would: rank arrays 0123456789, 0123456798, ...
    std::vector<int> ranks(10);
    for (int i = 0; i < 10; ++i) ranks[i] = i;
    const auto universe = subsets_up_to(g4, 2);
    for (const auto& order : first.orders) {
        for (std::size_t i = 0; i < universe.size(); ++i)
            REQUIRE(order.position(universe[i]) == ranks[i]);
        std::next_permutation(ranks.begin(), ranks.end());
    }
}

TEST_CASE("pruned search yields genuinely strongly compatible orders") {
    GroundSet g(4);
    const auto strong = enumerate_orders(g, 2, OrderFilter::strongly_compatible, 40);
    REQUIRE(strong.orders.size() == 40);
    CHECK(strong.truncated);
    for (const auto& order : strong.orders) REQUIRE(classify(order).strongly_compatible);
}

TEST_CASE("cardinality-lexicographic order expands as written") {
    GroundSet g(3);
    const auto plain = lexicographic_block_order(g, 2, {1, 2, 3});
    CHECK(plain.sequence() ==
          std::vector<Mask>{1, 2, 4, mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})});
    CHECK(classify(plain).strongly_compatible);

    // A nonidentity base permutation relabels before comparing.
    const auto relabeled = lexicographic_block_order(g, 2, {3, 1, 2});
    CHECK(relabeled.sequence() ==
          std::vector<Mask>{4, 1, 2, mask_of({1, 3}), mask_of({2, 3}), mask_of({1, 2})});
    CHECK(classify(relabeled).strongly_compatible);

    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= n; ++k) {
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i + 1;
            CHECK(classify(lexicographic_block_order(GroundSet(n), k, perm))
                      .strongly_compatible);
        }
}

TEST_CASE("deferred-coalition construction matches the worked instance") {
    // Five players, degree 3, inner block {1,2,3,4} with {4} pushed last.
    GroundSet g(5);
    const auto order =
        lexicographic_block_order(g, 3, {1, 2, 3, 4, 5}, mask_of({1, 2, 3, 4}), mask_of({4}));
    const std::vector<Mask> expected_prefix{
        mask_of({1}), mask_of({2}), mask_of({3}), mask_of({1, 2}), mask_of({1, 3}),
        mask_of({1, 4}), mask_of({2, 3}), mask_of({2, 4}), mask_of({3, 4}),
        mask_of({1, 2, 3}), mask_of({1, 2, 4}), mask_of({1, 3, 4}), mask_of({2, 3, 4}),
        mask_of({4}), mask_of({5}), mask_of({1, 5}), mask_of({2, 5})};
    REQUIRE(order.sequence().size() == 25);
    const std::vector<Mask> prefix(order.sequence().begin(),
                                   order.sequence().begin() + expected_prefix.size());
    CHECK(prefix == expected_prefix);

    // Deferral always sacrifices inclusion-respect, and at degree 3 the union
    // law breaks too: {1,2} precedes the deferred {4}, yet joining {3} gives
    // {3,4} (a pair, early block) before {1,2,3} (a triple, later block).
    const auto report = classify(order);
    CHECK_FALSE(report.subset_compatible);
    CHECK_FALSE(report.compatible);
    CHECK(order.before(mask_of({1, 2}), mask_of({4})));
    CHECK(order.before(mask_of({3, 4}), mask_of({1, 2, 3})));

    CHECK_THROWS_AS(
        lexicographic_block_order(g, 3, {1, 2, 3, 4, 5}, mask_of({1, 2}), mask_of({3})),
        input_error);
}

TEST_CASE("degree-2 deferral keeps the union law") {
    // Same construction one degree down: pairs can never absorb a third
    // player, which is exactly what broke the degree-3 instance.
    GroundSet g(4);
    const auto order =
        lexicographic_block_order(g, 2, {1, 2, 3, 4}, mask_of({1, 2, 3}), mask_of({3}));
    CHECK(order.sequence() ==
          std::vector<Mask>{mask_of({1}), mask_of({2}), mask_of({1, 2}), mask_of({1, 3}),
                            mask_of({2, 3}), mask_of({3}), mask_of({4}), mask_of({1, 4}),
                            mask_of({2, 4}), mask_of({3, 4})});
    const auto report = classify(order);
    CHECK(report.compatible);
    CHECK_FALSE(report.subset_compatible);
    CHECK_FALSE(report.strongly_compatible);
}
