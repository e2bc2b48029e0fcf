#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// The parallel kernels must agree with their serial reference
// implementations on identical inputs, counterexamples included.

#include "boolalg/amalgam.hpp"
#include "boolalg/commute.hpp"
#include "boolalg/cube.hpp"
#include "boolalg/functors.hpp"

#include "generators.hpp"

#include <algorithm>

using namespace boolalg;

TEST_CASE("commutes: serial and parallel agree") {
    testgen::Rng rng(20240860);
    for (int iter = 0; iter < 200; ++iter) {
        int m = rng.uniform(2, 8);
        int n = rng.uniform(2, 4);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, n);
        PredicateResult s = commutes_report(fam, Exec::Serial);
        PredicateResult p = commutes_report(fam, Exec::Parallel);
        CHECK(s.value == p.value);
        CHECK(s.counterexample == p.counterexample);
    }
}

TEST_CASE("weakly_commutes: serial and parallel agree") {
    testgen::Rng rng(20240861);
    for (int iter = 0; iter < 200; ++iter) {
        int m = rng.uniform(2, 8);
        int n = rng.uniform(2, 4);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, n);
        PredicateResult s = weakly_commutes_report(fam, Exec::Serial);
        PredicateResult p = weakly_commutes_report(fam, Exec::Parallel);
        CHECK(s.value == p.value);
        CHECK(s.counterexample == p.counterexample);
    }
}

TEST_CASE("compatible_tuples: serial and parallel agree and stay sorted") {
    testgen::Rng rng(20240862);
    for (int iter = 0; iter < 200; ++iter) {
        OverlapSystem sys = testgen::random_system(rng, rng.uniform(1, 4), 6);
        auto s = compatible_tuples(sys, Exec::Serial);
        auto p = compatible_tuples(sys, Exec::Parallel);
        CHECK(s == p);
        CHECK(std::is_sorted(s.begin(), s.end()));
    }
}

TEST_CASE("cube commutativity: serial and parallel agree") {
    testgen::Rng rng(20240863);
    for (int iter = 0; iter < 100; ++iter) {
        int m = rng.uniform(2, 7);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, 3);
        FinCube cube = cube_from_family(fam);
        CommutativityReport s = n_commutativity_report(cube, Exec::Serial);
        CommutativityReport p = n_commutativity_report(cube, Exec::Parallel);
        CHECK(s.value == p.value);
        CHECK(s.counterexample == p.counterexample);
    }
}

TEST_CASE("searches return the same witness under both modes") {
    AlgebraSearchResult s = search_algebra_counterexample(FunctorId::sp(2), 3, Exec::Serial);
    AlgebraSearchResult p = search_algebra_counterexample(FunctorId::sp(2), 3, Exec::Parallel);
    CHECK(s.found == p.found);
    if (s.found && p.found) {
        for (int i = 0; i < 3; ++i)
            CHECK(s.triple[static_cast<size_t>(i)] == p.triple[static_cast<size_t>(i)]);
        CHECK(s.failingTuple == p.failingTuple);
    }
    CubeSearchResult cs = search_cube_counterexample(FunctorId::sp(2), 3, Exec::Serial);
    CubeSearchResult cp = search_cube_counterexample(FunctorId::sp(2), 3, Exec::Parallel);
    CHECK(cs.found == cp.found);
    CHECK(cs.indexSets == cp.indexSets);
    CHECK(cs.failingTuple == cp.failingTuple);
}
