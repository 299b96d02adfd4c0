#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "order.hpp"
#include "subset.hpp"

namespace kcore {

// The achievable family of a center b under an order: every superset of b
// all of whose ranked subcoalitions stay at or below b. Nonempty families
// always carry b as their unique bottom; is_lattice flags the families that
// fill out a whole Boolean interval, whose maximum is then `top`.
struct AchievableFamily {
    Mask b = 0;
    std::vector<Mask> members;  // ascending mask order
    std::optional<Mask> top;
    bool is_lattice = false;

    bool empty() const { return members.empty(); }
    bool contains(Mask a) const {
        return std::binary_search(members.begin(), members.end(), a);
    }
};

inline AchievableFamily achievable_family(const SubsetOrder& order, Mask b) {
    if (!order.ranks(b))
        throw input_error("center '" + format_subset(b) +
                          "' is not a coalition ranked by the order");
    AchievableFamily family;
    family.b = b;
    const int rank_b = order.position(b);
    for_each_superset(b, order.ground().full(), [&](Mask a) {
        bool admissible = true;
        for_each_submask(a, [&](Mask sub) {
            if (!admissible || sub == 0 || card(sub) > order.k()) return;
            if (order.position(sub) > rank_b) admissible = false;
        });
        if (admissible) family.members.push_back(a);
    });
    std::sort(family.members.begin(), family.members.end());

    if (!family.empty()) {
        Mask hull = 0;
        for (Mask a : family.members) hull |= a;
        // A family is a lattice exactly when it fills the interval [b, hull]:
        // right size and the hull itself present.
        const std::size_t interval_size = std::size_t{1} << card(hull & ~b);
        if (family.contains(hull) && family.members.size() == interval_size) {
            family.is_lattice = true;
            family.top = hull;
        }
    }
    return family;
}

struct FamilyAtlas {
    // Families keyed by their center, one per ranked coalition.
    std::map<Mask, AchievableFamily> families;
    bool partition_checked = false;
};

// Computes every family and asserts the cornerstone structural fact: the
// nonempty families slice P(N) minus the empty set into disjoint pieces.
// A violation cannot come from bad input, only from a bug, hence the
// internal error.
inline FamilyAtlas build_atlas(const SubsetOrder& order) {
    FamilyAtlas atlas;
    std::vector<int> covered(order.ground().table_size(), 0);
    for (Mask b : order.sequence()) {
        auto family = achievable_family(order, b);
        for (Mask a : family.members) ++covered[a];
        atlas.families.emplace(b, std::move(family));
    }
    for (Mask a = 1; a <= order.ground().full(); ++a)
        if (covered[a] != 1)
            throw internal_error("achievable families failed to partition: coalition '" +
                                 format_subset(a) + "' covered " +
                                 std::to_string(covered[a]) + " times");
    atlas.partition_checked = true;
    return atlas;
}

// True when every nonempty family is exactly the Boolean interval from its
// center to its top. Verified by expansion, not by trusting the lattice flag.
inline bool check_interval_property(const FamilyAtlas& atlas) {
    for (const auto& [b, family] : atlas.families) {
        if (family.empty()) continue;
        if (!family.top) return false;
        const Mask span = *family.top & ~b;
        const std::size_t interval_size = std::size_t{1} << card(span);
        if (family.members.size() != interval_size) return false;
        bool all_in = true;
        for_each_submask(span, [&](Mask extra) {
            if (!family.contains(b | extra)) all_in = false;
        });
        if (!all_in) return false;
    }
    return true;
}

// Tops of all nonempty families; the generalization of a maximal chain.
inline std::vector<Mask> top_collection(const SubsetOrder& order) {
    std::vector<Mask> tops;
    for (Mask b : order.sequence()) {
        const auto family = achievable_family(order, b);
        if (family.empty()) continue;
        if (!family.is_lattice)
            throw structure_error("family of '" + format_subset(b) +
                                  "' is not a lattice; tops are undefined");
        tops.push_back(*family.top);
    }
    std::sort(tops.begin(), tops.end());
    return tops;
}

// Within a lattice family, the center must read as a suffix of its top once
// the top's players are listed by their singleton ranks.
inline bool check_suffix_property(const SubsetOrder& order, const AchievableFamily& family) {
    if (family.empty() || !family.top)
        throw structure_error("suffix property applies to nonempty lattice families only");
    auto players = elements(*family.top);
    std::sort(players.begin(), players.end(), [&](int x, int y) {
        return order.before(singleton(x), singleton(y));
    });
    Mask suffix = 0;
    for (auto it = players.rbegin(); it != players.rend(); ++it) {
        suffix |= singleton(*it);
        if (suffix == family.b) return true;
    }
    return false;
}

} // namespace kcore
