#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boolalg/fixtures.hpp"
#include "boolalg/json_io.hpp"

#include "generators.hpp"

using namespace boolalg;

TEST_CASE("element and subalgebra round trips") {
    testgen::Rng rng(20240850);
    for (int iter = 0; iter < 200; ++iter) {
        int m = rng.uniform(1, 12);
        Element x = testgen::random_element(rng, m);
        CHECK(element_from_json(element_to_json(x)) == x);
        Subalgebra s = testgen::random_subalgebra(rng, m);
        CHECK(subalgebra_from_json(subalgebra_to_json(s)) == s);
    }
}

TEST_CASE("canonical emission") {
    Subalgebra s = Subalgebra::from_blocks(
        4, {Bits::from_points({2, 3}, 4), Bits::from_points({0, 1}, 4)});
    Json j = subalgebra_to_json(s);
    CHECK(j["blocks"][0] == Json::array({0, 1}));
    CHECK(j["blocks"][1] == Json::array({2, 3}));
    Json e = element_to_json(Element(4, Bits::from_points({3, 0}, 4)));
    CHECK(e["bits"] == Json::array({0, 3}));
}

TEST_CASE("family and system round trips") {
    testgen::Rng rng(20240851);
    for (int iter = 0; iter < 100; ++iter) {
        int m = rng.uniform(1, 8);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, rng.uniform(1, 4));
        std::vector<Subalgebra> back = family_from_json(family_to_json(fam));
        CHECK(back == fam);
        OverlapSystem sys = testgen::random_system(rng, rng.uniform(1, 4), 5);
        OverlapSystem sysBack = system_from_json(system_to_json(sys));
        CHECK(sysBack.atomCounts == sys.atomCounts);
        REQUIRE(sysBack.pairs.size() == sys.pairs.size());
        for (size_t p = 0; p < sys.pairs.size(); ++p) {
            CHECK(sysBack.pairs[p].mapI == sys.pairs[p].mapI);
            CHECK(sysBack.pairs[p].mapJ == sys.pairs[p].mapJ);
        }
    }
}

TEST_CASE("schema violations are named") {
    CHECK_THROWS_AS(subalgebra_from_json(Json{{"ground", 3}, {"blocks", Json::array({Json::array({0, 1}), Json::array({1, 2})})}}),
                    schema_error);
    CHECK_THROWS_AS(element_from_json(Json{{"ground", 3}, {"bits", Json::array({5})}}),
                    schema_error);
    CHECK_THROWS_AS(family_from_json(Json{{"ground", 3}}), schema_error);
    CHECK_THROWS_AS(system_from_json(Json{{"atomCounts", Json::array({2, 2})}}), schema_error);
    // A family member over the wrong ground.
    Json fam{{"ground", 3},
             {"subalgebras", Json::array({Json{{"ground", 2},
                                               {"blocks", Json::array({Json::array({0, 1})})}}})}};
    CHECK_THROWS_AS(family_from_json(fam), schema_error);
}

TEST_CASE("system-or-family accepts both encodings") {
    std::vector<Subalgebra> fam = noncomm_family();
    OverlapSystem a = system_or_family_from_json(family_to_json(fam));
    OverlapSystem b = system_or_family_from_json(system_to_json(embed_as_system(fam)));
    CHECK(a.atomCounts == b.atomCounts);
}

TEST_CASE("cube emission uses subset-string keys") {
    FinCube cube = projection_cube({{0}, {1}});
    Json j = cube_to_json(cube);
    CHECK(j["n"] == 2);
    CHECK(j["spaces"][""] == 4);
    CHECK(j["spaces"]["01"] == 1);
    CHECK(j["maps"].contains("->0"));
    CHECK(j["maps"].contains("0->01"));
}

TEST_CASE("report shapes") {
    PredicateResult ok{true, std::nullopt};
    CHECK(predicate_to_json(ok)["counterexample"].is_null());
    PredicateResult bad{false, std::vector<int>{1, 0}};
    CHECK(predicate_to_json(bad)["counterexample"] == Json::array({1, 0}));
    PushoutResult p = pushout(badoverlap_system());
    Json pj = pushout_to_json(p, true);
    CHECK(pj["atomCount"] == badoverlap_recorded_tuple_count());
    CHECK(pj.contains("coprojections"));
    CHECK(pushout_to_json(p, false).contains("coprojections") == false);
}
