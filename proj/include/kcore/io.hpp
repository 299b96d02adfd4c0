#pragma once

// JSON surfaces of the library: games in worth or Mobius form, subset
// orders, achievable-family atlases, polyhedron summaries and vertex
// certificates. Coalitions travel as comma-separated ascending player
// lists ("1,2,4"); numbers travel as exact rational strings, never as
// floating point.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kcore/achievable.hpp"
#include "kcore/constraints.hpp"
#include "kcore/corevert.hpp"
#include "kcore/errors.hpp"
#include "kcore/game.hpp"
#include "kcore/oracle.hpp"
#include "kcore/order.hpp"
#include "kcore/rational.hpp"
#include "kcore/subset.hpp"

namespace kcore {

using Json = nlohmann::ordered_json;

inline std::string coalition_key(Mask a) {
    std::string out;
    for (int i : elements(a)) {
        if (!out.empty()) out += ',';
        out += std::to_string(i);
    }
    return out;
}

// Inverse of coalition_key. The empty string denotes the empty coalition;
// everything else must be a strictly ascending list of players in range.
inline Mask coalition_from_key(const GroundSet& ground, const std::string& key) {
    Mask result = 0;
    int last = 0;
    std::size_t pos = 0;
    while (pos < key.size()) {
        const std::size_t comma = key.find(',', pos);
        const std::size_t end = comma == std::string::npos ? key.size() : comma;
        const std::string part = key.substr(pos, end - pos);
        if (part.empty())
            throw input_error("coalition key \"" + key + "\" has an empty element");
        int value = 0;
        for (char c : part) {
            if (c < '0' || c > '9')
                throw input_error("coalition key \"" + key + "\": \"" + part +
                                  "\" is not a player number");
            if (value <= ground.n) value = value * 10 + (c - '0');
        }
        if (value < 1 || value > ground.n)
            throw input_error("coalition key \"" + key + "\": player " + part +
                              " is outside 1.." + std::to_string(ground.n));
        if (value <= last)
            throw input_error("coalition key \"" + key +
                              "\": players must be strictly ascending");
        last = value;
        result |= singleton(value);
        if (comma == std::string::npos) return result;
        pos = comma + 1;
        if (pos == key.size())
            throw input_error("coalition key \"" + key + "\" ends with a comma");
    }
    return result;
}

namespace detail {

inline const Json& require_field(const Json& doc, const char* name) {
    if (!doc.is_object()) throw input_error("expected a JSON object");
    const auto it = doc.find(name);
    if (it == doc.end())
        throw input_error(std::string("missing field \"") + name + "\"");
    return *it;
}

inline int require_int(const Json& doc, const char* name) {
    const Json& field = require_field(doc, name);
    if (!field.is_number_integer())
        throw input_error(std::string("field \"") + name + "\" must be an integer");
    return field.get<int>();
}

// Values must stay exact: rational strings always work, and integer
// literals are harmless, but a float like 0.1 has already been rounded by
// the time a parser hands it over.
inline Rational rational_value(const Json& value, const std::string& where) {
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const input_error& e) {
            throw input_error(where + ": " + e.what());
        }
    }
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number())
        throw input_error(where + ": write the value as a string, floating point loses exactness");
    throw input_error(where + ": expected a rational string");
}

// Nonzero coefficients keyed by coalition, singletons first, then pairs,
// and so on; absent keys mean zero on the way back in.
inline Json entries_json(const MobiusVector& m) {
    Json entries = Json::object();
    for (int size = 1; size <= m.ground.n; ++size) {
        for (Mask a : subsets_of_size(m.ground, size)) {
            if (m[a] != 0) entries[coalition_key(a)] = format_rational(m[a]);
        }
    }
    return entries;
}

}  // namespace detail

struct LoadedGame {
    GameTable worth;
    MobiusVector mobius;
    bool mobius_form = false;  // which of the two the file actually carried

    explicit LoadedGame(const GroundSet& g) : worth(g), mobius(g) {}
};

inline LoadedGame game_from_json(const Json& doc) {
    const int n = detail::require_int(doc, "n");
    if (n < 1) throw input_error("field \"n\" must be at least 1");
    const GroundSet ground(n);

    const Json& form = detail::require_field(doc, "form");
    if (!form.is_string() ||
        (form.get<std::string>() != "game" && form.get<std::string>() != "mobius"))
        throw input_error("field \"form\" must be \"game\" or \"mobius\"");
    const bool mobius_form = form.get<std::string>() == "mobius";

    LoadedGame loaded(ground);
    loaded.mobius_form = mobius_form;
    if (const auto it = doc.find("entries"); it != doc.end()) {
        if (!it->is_object()) throw input_error("field \"entries\" must be an object");
        for (const auto& [key, value] : it->items()) {
            const Mask a = coalition_from_key(ground, key);
            const Rational x = detail::rational_value(value, "entries[\"" + key + "\"]");
            if (a == 0) {
                if (x != 0) throw input_error("the empty coalition must have value 0");
                continue;
            }
            if (mobius_form)
                loaded.mobius[a] = x;
            else
                loaded.worth[a] = x;
        }
    }
    if (mobius_form)
        loaded.worth = inverse_mobius(loaded.mobius);
    else
        loaded.mobius = mobius_transform(loaded.worth);
    return loaded;
}

inline Json game_to_json(const GameTable& v) {
    Json doc;
    doc["n"] = v.ground.n;
    doc["form"] = "game";
    Json entries = Json::object();
    for (int size = 1; size <= v.ground.n; ++size) {
        for (Mask a : subsets_of_size(v.ground, size)) {
            if (v[a] != 0) entries[coalition_key(a)] = format_rational(v[a]);
        }
    }
    doc["entries"] = entries;
    return doc;
}

inline Json mobius_to_json(const MobiusVector& m) {
    Json doc;
    doc["n"] = m.ground.n;
    doc["form"] = "mobius";
    doc["entries"] = detail::entries_json(m);
    return doc;
}

inline SubsetOrder order_from_json(const Json& doc) {
    const int n = detail::require_int(doc, "n");
    if (n < 1) throw input_error("field \"n\" must be at least 1");
    const GroundSet ground(n);
    const int k = detail::require_int(doc, "k");

    const Json& sequence = detail::require_field(doc, "sequence");
    if (!sequence.is_array()) throw input_error("field \"sequence\" must be an array");
    std::vector<Mask> masks;
    for (const auto& item : sequence) {
        if (!item.is_string())
            throw input_error("sequence entries must be coalition strings");
        const Mask a = coalition_from_key(ground, item.get<std::string>());
        if (a == 0) throw input_error("the empty coalition cannot appear in an order");
        masks.push_back(a);
    }
    return SubsetOrder(ground, k, masks);
}

inline Json order_to_json(const SubsetOrder& order) {
    Json doc;
    doc["n"] = order.ground().n;
    doc["k"] = order.k();
    Json sequence = Json::array();
    for (Mask a : order.sequence()) sequence.push_back(coalition_key(a));
    doc["sequence"] = sequence;
    return doc;
}

// One record per center, in order rank, mirroring how family listings read.
inline Json atlas_to_json(const SubsetOrder& order, const FamilyAtlas& atlas) {
    Json records = Json::array();
    for (Mask b : order.sequence()) {
        const AchievableFamily& family = atlas.families.at(b);
        Json record;
        record["center"] = coalition_key(b);
        Json members = Json::array();
        for (Mask a : family.members) members.push_back(coalition_key(a));
        record["members"] = members;
        record["top"] = family.top ? Json(coalition_key(*family.top)) : Json(nullptr);
        record["lattice"] = family.is_lattice;
        record["empty"] = family.empty();
        records.push_back(record);
    }
    return records;
}

inline Json summary_to_json(const ConstraintSystem& sys, const PolyhedronSummary& summary) {
    Json doc;
    doc["feasible"] = summary.feasible;
    doc["bounded"] = summary.bounded;
    Json vertices = Json::array();
    for (const auto& x : summary.vertices)
        vertices.push_back(detail::entries_json(from_coordinates(sys, x)));
    doc["vertices"] = vertices;
    Json rays = Json::array();
    for (const auto& d : summary.rays)
        rays.push_back(detail::entries_json(from_coordinates(sys, d)));
    doc["rays"] = rays;
    return doc;
}

inline Json certificate_to_json(const VertexCertificate& cert) {
    Json record;
    record["mobius"] = detail::entries_json(cert.point);
    record["tight"] = cert.tight_rows;
    record["rank"] = cert.rank;
    record["vertex"] = cert.is_vertex;
    return record;
}

inline Json certificates_to_json(const std::vector<VertexCertificate>& certs) {
    Json records = Json::array();
    for (const auto& cert : certs) records.push_back(certificate_to_json(cert));
    return records;
}

inline Json ray_to_json(const Ray& ray) {
    Json doc;
    doc["direction"] = detail::entries_json(ray.direction);
    return doc;
}

// File loading keeps whatever context the parser offers (it reports line
// and column on syntax errors) and prefixes the path.
inline Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline LoadedGame load_game(const std::string& path) {
    try {
        return game_from_json(parse_json_file(path));
    } catch (const input_error& e) {
        if (std::string(e.what()).rfind(path, 0) == 0) throw;
        throw input_error(path + ": " + e.what());
    }
}

inline SubsetOrder load_order(const std::string& path) {
    try {
        return order_from_json(parse_json_file(path));
    } catch (const input_error& e) {
        if (std::string(e.what()).rfind(path, 0) == 0) throw;
        throw input_error(path + ": " + e.what());
    }
}

}  // namespace kcore
