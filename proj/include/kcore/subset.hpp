#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kcore {

// A coalition over players 1..n, encoded with player i on bit (i-1).
using Mask = std::uint32_t;

inline int card(Mask a) { return std::popcount(a); }

inline Mask singleton(int player) { return Mask{1} << (player - 1); }

// The set of players {1, ..., n}. All dense tables in the library are
// indexed by Mask, so n is capped where a 2^n table is still addressable.
struct GroundSet {
    int n;

    explicit GroundSet(int players) : n(players) {
        if (n < 1 || n > 24)
            throw input_error("ground set size must be between 1 and 24, got " +
                              std::to_string(n));
    }

    Mask full() const { return (Mask{1} << n) - 1; }
    std::size_t table_size() const { return std::size_t{1} << n; }
    bool contains(Mask a) const { return (a & ~full()) == 0; }
};

inline std::vector<int> elements(Mask a) {
    std::vector<int> out;
    for (int i = 1; a != 0; ++i, a >>= 1)
        if (a & 1) out.push_back(i);
    return out;
}

inline Mask mask_of(std::initializer_list<int> players) {
    Mask a = 0;
    for (int i : players) a |= singleton(i);
    return a;
}

// All nonempty subsets of `ground` with at most `max_card` elements,
// in increasing mask order.
inline std::vector<Mask> subsets_up_to(const GroundSet& ground, int max_card) {
    std::vector<Mask> out;
    for (Mask a = 1; a <= ground.full(); ++a)
        if (card(a) <= max_card) out.push_back(a);
    return out;
}

inline std::vector<Mask> subsets_of_size(const GroundSet& ground, int size) {
    std::vector<Mask> out;
    for (Mask a = 0; a <= ground.full(); ++a)
        if (card(a) == size) out.push_back(a);
    return out;
}

// Visits every submask of `a`, descending, including `a` itself and 0.
template <typename Fn>
void for_each_submask(Mask a, Fn&& fn) {
    Mask s = a;
    while (true) {
        fn(s);
        if (s == 0) break;
        s = (s - 1) & a;
    }
}

// Visits every superset of `a` inside `universe`, ascending, including `a`.
template <typename Fn>
void for_each_superset(Mask a, Mask universe, Fn&& fn) {
    const Mask free = universe & ~a;
    Mask s = 0;
    while (true) {
        fn(a | s);
        if (s == free) break;
        s = (s - free) & free;
    }
}

// "1,3,4" with ascending players; the empty set prints as "".
inline std::string format_subset(Mask a) {
    std::string out;
    for (int i : elements(a)) {
        if (!out.empty()) out += ',';
        out += std::to_string(i);
    }
    return out;
}

// Strict inverse of format_subset: comma-separated, strictly ascending.
inline Mask parse_subset(const std::string& text, const GroundSet& ground) {
    if (text.empty()) return 0;
    Mask result = 0;
    int previous = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string token = text.substr(pos, comma - pos);
        if (token.empty() || token.size() > 2)
            throw input_error("bad subset token '" + token + "' in '" + text + "'");
        for (char c : token)
            if (c < '0' || c > '9')
                throw input_error("bad subset token '" + token + "' in '" + text + "'");
        const int player = std::stoi(token);
        if (player < 1 || player > ground.n)
            throw input_error("player " + token + " outside ground set of size " +
                              std::to_string(ground.n));
        if (player <= previous)
            throw input_error("players must be strictly ascending in '" + text + "'");
        result |= singleton(player);
        previous = player;
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return result;
}

} // namespace kcore
