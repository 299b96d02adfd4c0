#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "fixtures.hpp"
#include "kcore/achievable.hpp"
#include "kcore/constraints.hpp"
#include "kcore/corevert.hpp"
#include "kcore/game.hpp"
#include "kcore/io.hpp"
#include "kcore/oracle.hpp"
#include "kcore/order.hpp"
#include "oracles.hpp"

using kcore::CoreVariant;
using kcore::GroundSet;
using kcore::Json;
using kcore::Mask;
using kcore::mask_of;
using kcore::Rational;

TEST_CASE("coalition keys round trip") {
    const GroundSet g{4};
    for (Mask a = 0; a <= g.full(); ++a) {
        CHECK(kcore::coalition_from_key(g, kcore::coalition_key(a)) == a);
    }
    CHECK(kcore::coalition_key(mask_of({1, 3, 4})) == "1,3,4");
    CHECK(kcore::coalition_key(0) == "");
}

TEST_CASE("coalition key rejection") {
    const GroundSet g{4};
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "2,1"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "1,1"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "0"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "5"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "1,,2"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "1,2,"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "a"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "1-2"), kcore::input_error);
    CHECK_THROWS_AS(kcore::coalition_from_key(g, "123456789123456789"), kcore::input_error);
}

TEST_CASE("loading a game in worth form") {
    const auto doc = Json::parse(R"({
        "n": 3,
        "form": "game",
        "entries": {
            "1": "0.1", "2": "0.1", "3": "0.1",
            "1,2": "0.4", "1,3": "0.4", "2,3": "0.4",
            "1,2,3": "1"
        }
    })");
    const auto loaded = kcore::game_from_json(doc);
    CHECK_FALSE(loaded.mobius_form);
    CHECK(loaded.worth.values == fixtures::symmetric_game3().values);
    CHECK(loaded.mobius.coeffs == kcore::mobius_transform(loaded.worth).coeffs);
    CHECK(loaded.mobius[mask_of({1, 2})] == Rational(1, 5));
}

TEST_CASE("loading a game in coefficient form") {
    const auto doc = Json::parse(R"({
        "n": 3,
        "form": "mobius",
        "entries": {"1,2": "1", "1,3": "1", "2,3": "1", "1,2,3": "-1"}
    })");
    const auto loaded = kcore::game_from_json(doc);
    CHECK(loaded.mobius_form);
    CHECK(loaded.worth.values == fixtures::pair_bonus_game3().values);
}

TEST_CASE("absent entries are zero and integers are exact") {
    const auto doc = Json::parse(R"({"n": 2, "form": "game", "entries": {"1": 1, "1,2": 3}})");
    const auto loaded = kcore::game_from_json(doc);
    CHECK(loaded.worth[mask_of({1})] == 1);
    CHECK(loaded.worth[mask_of({2})] == 0);
    CHECK(loaded.worth[mask_of({1, 2})] == 3);

    const auto bare = kcore::game_from_json(Json::parse(R"({"n": 2, "form": "game"})"));
    CHECK(bare.worth[mask_of({1, 2})] == 0);
}

TEST_CASE("game documents that must be rejected") {
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(R"({"form": "game"})")),
                    kcore::input_error);
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(R"({"n": 3})")), kcore::input_error);
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(R"({"n": 3, "form": "worth"})")),
                    kcore::input_error);
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(R"({"n": 0, "form": "game"})")),
                    kcore::input_error);

    // A nonzero value on the empty coalition breaks the grounding axiom.
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(
                        R"({"n": 2, "form": "game", "entries": {"": "1"}})")),
                    kcore::input_error);
    // An explicit zero there is redundant but legal.
    CHECK_NOTHROW(kcore::game_from_json(Json::parse(
        R"({"n": 2, "form": "game", "entries": {"": "0", "1,2": "1"}})")));

    // Floats have already lost exactness upstream; only strings and
    // integers are accepted.
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(
                        R"({"n": 2, "form": "game", "entries": {"1": 0.1}})")),
                    kcore::input_error);
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(
                        R"({"n": 2, "form": "game", "entries": {"1": "1/0"}})")),
                    kcore::input_error);
    CHECK_THROWS_AS(kcore::game_from_json(Json::parse(
                        R"({"n": 2, "form": "game", "entries": {"1": "abc"}})")),
                    kcore::input_error);
}

TEST_CASE("game serialization round trips exactly") {
    for (std::uint64_t seed = 900; seed < 906; ++seed) {
        const auto v = oracles::random_game(seed, 4);
        const auto back = kcore::game_from_json(kcore::game_to_json(v));
        CHECK(back.worth.values == v.values);

        const auto m = kcore::mobius_transform(v);
        const auto mback = kcore::game_from_json(kcore::mobius_to_json(m));
        CHECK(mback.mobius.coeffs == m.coeffs);
        CHECK(mback.mobius_form);
    }

    // Thirds survive; no decimal detour can represent them.
    kcore::GameTable v((GroundSet{2}));
    v[mask_of({1})] = Rational(1, 3);
    v[mask_of({1, 2})] = Rational(1, 3);
    const auto doc = kcore::game_to_json(v);
    CHECK(doc["entries"]["1"] == "1/3");
    CHECK(kcore::game_from_json(doc).worth[mask_of({1})] == Rational(1, 3));
}

TEST_CASE("orders load from their documented format") {
    const auto doc = Json::parse(R"({
        "n": 4, "k": 2,
        "sequence": ["2","3","2,4","1,2","4","1,3","3,4","1","2,3","1,4"]
    })");
    const auto order = kcore::order_from_json(doc);
    CHECK(order.ground().n == 4);
    CHECK(order.k() == 2);
    CHECK(order.position(mask_of({2})) == 0);
    CHECK(order.position(mask_of({1, 4})) == 9);

    // Round trip reproduces the document byte for byte.
    CHECK(kcore::order_to_json(order).dump() == doc.dump());
}

TEST_CASE("order documents that must be rejected") {
    // {1,2} listed twice, {3,4} missing.
    CHECK_THROWS_AS(kcore::order_from_json(Json::parse(
                        R"({"n": 2, "k": 2, "sequence": ["1","2","1,2","1,2"]})")),
                    kcore::input_error);
    // Too short for the full subset list.
    CHECK_THROWS_AS(
        kcore::order_from_json(Json::parse(R"({"n": 2, "k": 2, "sequence": ["1","2"]})")),
        kcore::input_error);
    // The empty coalition is not ranked.
    CHECK_THROWS_AS(kcore::order_from_json(Json::parse(
                        R"({"n": 2, "k": 1, "sequence": ["1","2",""]})")),
                    kcore::input_error);
    CHECK_THROWS_AS(kcore::order_from_json(Json::parse(
                        R"({"n": 2, "k": 1, "sequence": ["1", 2]})")),
                    kcore::input_error);
}

TEST_CASE("atlas records follow the order and mark their shape") {
    // Pairs ranked before the last singleton: the family of {3} swallows
    // everything above it.
    const auto order =
        kcore::SubsetOrder(GroundSet{3}, 2, {1, 2, 3, 5, 6, 4});
    const auto records = kcore::atlas_to_json(order, kcore::build_atlas(order));
    REQUIRE(records.size() == 6);

    CHECK(records[0]["center"] == "1");
    CHECK(records[0]["members"] == Json::array({"1"}));
    CHECK(records[0]["top"] == "1");
    CHECK(records[0]["lattice"] == true);
    CHECK(records[0]["empty"] == false);

    // A({1,3}) is empty: pairs containing 3 are trapped behind the singleton.
    CHECK(records[3]["center"] == "1,3");
    CHECK(records[3]["members"] == Json::array());
    CHECK(records[3]["top"].is_null());
    CHECK(records[3]["lattice"] == false);
    CHECK(records[3]["empty"] == true);

    CHECK(records[5]["center"] == "3");
    CHECK(records[5]["members"] == Json::array({"3", "1,3", "2,3", "1,2,3"}));
    CHECK(records[5]["top"] == "1,2,3");
    CHECK(records[5]["lattice"] == true);
}

TEST_CASE("polyhedron summaries keep exact strings") {
    const auto v = fixtures::symmetric_game3();

    const auto sys1 = kcore::core_constraints(v, 1, CoreVariant::plain);
    const auto doc1 = kcore::summary_to_json(sys1, kcore::enumerate_vertices(sys1));
    CHECK(doc1["feasible"] == true);
    CHECK(doc1["bounded"] == true);
    CHECK(doc1["vertices"].size() == 6);
    CHECK(doc1["rays"].empty());

    const auto sys2 = kcore::core_constraints(v, 2, CoreVariant::plain);
    const auto doc2 = kcore::summary_to_json(sys2, kcore::enumerate_vertices(sys2));
    CHECK(doc2["bounded"] == false);
    CHECK(doc2["rays"].size() == 9);

    // The documented escape direction, with zero entries dropped.
    const Json expected = {{"1", "1"}, {"1,2", "-1"}};
    bool found = false;
    for (const auto& ray : doc2["rays"]) found = found || ray == expected;
    CHECK(found);
}

TEST_CASE("certificates serialize with their evidence") {
    const auto v = fixtures::symmetric_game3();
    const auto certs = kcore::vertices_n_minus_1(v);
    const auto records = kcore::certificates_to_json(certs);
    REQUIRE(records.size() == 3);
    for (const auto& record : records) {
        CHECK(record["vertex"] == true);
        CHECK(record["rank"] == 6);
        CHECK(record["tight"].size() >= 6);
        CHECK(record["mobius"].is_object());
    }

    const auto ray = kcore::find_ray(v, 2);
    REQUIRE(ray.has_value());
    const auto ray_doc = kcore::ray_to_json(*ray);
    CHECK(ray_doc["direction"].is_object());
    CHECK_FALSE(ray_doc["direction"].empty());
}

TEST_CASE("file loading reports syntax errors with context") {
    const std::string dir = "/tmp/kcore_io_test";
    std::filesystem::create_directories(dir);

    {
        std::ofstream out(dir + "/broken.json");
        out << "{\n  \"n\": 3,\n  \"form\" \"game\"\n}\n";
    }
    try {
        kcore::load_game(dir + "/broken.json");
        FAIL("expected a syntax error");
    } catch (const kcore::input_error& e) {
        const std::string message = e.what();
        CHECK(message.find("broken.json") != std::string::npos);
        CHECK(message.find("line 3") != std::string::npos);
    }

    {
        std::ofstream out(dir + "/game.json");
        out << kcore::game_to_json(fixtures::symmetric_game3()).dump(2);
    }
    const auto loaded = kcore::load_game(dir + "/game.json");
    CHECK(loaded.worth.values == fixtures::symmetric_game3().values);

    CHECK_THROWS_AS(kcore::load_game(dir + "/missing.json"), kcore::input_error);

    {
        std::ofstream out(dir + "/order.json");
        out << R"({"n": 3, "k": 1, "sequence": ["2","1","3"]})";
    }
    const auto order = kcore::load_order(dir + "/order.json");
    CHECK(order.position(mask_of({2})) == 0);
}
