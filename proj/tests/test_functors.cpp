#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boolalg/commute.hpp"
#include "boolalg/cube.hpp"
#include "boolalg/functors.hpp"

#include "generators.hpp"

using namespace boolalg;

TEST_CASE("hyperspace of a one-point space is one point") {
    // A projection cube over an empty index set has one-point corners.
    FinCube cube = projection_cube({{}});
    FinCube img = apply_functor(FunctorId::exp(), cube);
    CHECK(img.size(0) == 1);
    CHECK(img.size(1) == 1);
}

TEST_CASE("projection cubes") {
    SUBCASE("disjoint supports: two-point faces, free top corner") {
        FinCube cube = projection_cube({{0}, {1}, {2}});
        CHECK(cube.size(0) == 8);
        for (int i = 0; i < 3; ++i)
            CHECK(cube.size(1 << i) == 2);
        CHECK(cube.size(0b111) == 1);
        CHECK(cube.is_functorial());
        CHECK(is_n_commutative(cube));
    }
    SUBCASE("pairwise singleton overlaps") {
        FinCube cube = projection_cube({{0, 1}, {1, 2}, {0, 2}});
        CHECK(cube.size(0) == 8);
        CHECK(cube.size(0b011) == 2); // shared coordinate 1
        CHECK(cube.size(0b111) == 1);
        CHECK(cube.is_functorial());
        CHECK(is_n_commutative(cube));
    }
    SUBCASE("random projection cubes are functorial and 3-commutative") {
        testgen::Rng rng(20240830);
        for (int iter = 0; iter < 50; ++iter) {
            std::vector<std::vector<int>> sets(3);
            for (auto& s : sets)
                for (int p = 0; p < 5; ++p)
                    if (rng.coin())
                        s.push_back(p);
            FinCube cube = projection_cube(sets);
            CHECK(cube.is_functorial());
            CHECK(is_n_commutative(cube));
        }
    }
}

TEST_CASE("two-dimensional commutativity is fiber-product surjectivity") {
    testgen::Rng rng(20240831);
    for (int iter = 0; iter < 100; ++iter) {
        // Random commutative square built from a random ground and quotients.
        int q = rng.uniform(1, 8);
        std::vector<Subalgebra> fam = testgen::random_family(rng, q, 2);
        FinCube cube = cube_from_family(fam);
        // Direct fiber-product check.
        const FinMap& f0 = cube.map(0b01, 0b11);
        const FinMap& f1 = cube.map(0b10, 0b11);
        std::vector<std::vector<bool>> achieved(
            static_cast<size_t>(cube.size(1)),
            std::vector<bool>(static_cast<size_t>(cube.size(2)), false));
        for (int p = 0; p < cube.size(0); ++p)
            achieved[static_cast<size_t>(cube.map(0, 1)(p))][static_cast<size_t>(cube.map(0, 2)(p))] =
                true;
        bool onto = true;
        for (int x = 0; x < cube.size(1); ++x)
            for (int y = 0; y < cube.size(2); ++y)
                if (f0(x) == f1(y) && !achieved[static_cast<size_t>(x)][static_cast<size_t>(y)])
                    onto = false;
        CHECK(is_n_commutative(cube) == onto);
    }
}

TEST_CASE("empty initial corner with surviving compatible tuples is not commutative") {
    FinCube cube(3, {0, 1, 1, 1, 1, 1, 1, 1});
    for (int s = 0; s < 8; ++s)
        for (int t = s; t < 8; ++t)
            if ((s & t) == s && s != t)
                cube.set_map(s, t, FinMap{cube.size(s), cube.size(t),
                                          std::vector<int>(static_cast<size_t>(cube.size(s)), 0)});
    CHECK(cube.is_functorial());
    CHECK_FALSE(is_n_commutative(cube));
}

TEST_CASE("stone duality: cube commutativity matches family commutativity") {
    testgen::Rng rng(20240832);
    for (int iter = 0; iter < 150; ++iter) {
        int m = rng.uniform(2, 7);
        int n = rng.uniform(2, 3);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, n);
        CHECK(is_n_commutative(cube_from_family(fam)) == commutes(fam));
    }
}

TEST_CASE("grouping on projection cubes") {
    testgen::Rng rng(20240833);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<std::vector<int>> sets(3);
        for (auto& s : sets)
            for (int p = 0; p < 5; ++p)
                if (rng.coin())
                    s.push_back(p);
        FinCube cube = projection_cube(sets);
        REQUIRE(is_n_commutative(cube));
        FinCube grouped = group_cube(cube, {{0, 1}, {2}});
        CHECK(grouped.is_functorial());
        CHECK(is_n_commutative(grouped));
        FinCube regrouped = group_cube(cube, {{2}, {0}, {1, 2}});
        CHECK(regrouped.is_functorial());
        CHECK(is_n_commutative(regrouped));
    }
}

TEST_CASE("face restriction of commutative cubes") {
    // Dual form of stepping down: if the whole cube and its face containing
    // the last coordinate are commutative, so is the face avoiding it.
    testgen::Rng rng(20240834);
    int faceHits = 0;
    for (int iter = 0; iter < 150; ++iter) {
        int m = rng.uniform(2, 7);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, 3);
        FinCube cube = cube_from_family(fam);
        FinCube upper = upper_face(cube);
        if (is_n_commutative(cube) && is_n_commutative(upper)) {
            ++faceHits;
            CHECK(is_n_commutative(lower_face(cube)));
        }
    }
    CHECK(faceHits > 10);
}

TEST_CASE("functor sizes and application") {
    SUBCASE("space sizes") {
        CHECK(functor_space_size(FunctorId::exp(), 4) == 15);
        CHECK(functor_space_size(FunctorId::sp(2), 4) == 10);
        CHECK(functor_space_size(FunctorId::sp(3), 4) == 20);
    }
    SUBCASE("functor images of cubes stay functorial") {
        testgen::Rng rng(20240834);
        for (int iter = 0; iter < 30; ++iter) {
            std::vector<std::vector<int>> sets(3);
            for (auto& s : sets)
                for (int p = 0; p < 3; ++p)
                    if (rng.coin())
                        s.push_back(p);
            FinCube cube = projection_cube(sets);
            CHECK(apply_functor(FunctorId::exp(), cube).is_functorial());
            CHECK(apply_functor(FunctorId::sp(2), cube).is_functorial());
        }
    }
    SUBCASE("constraint-free cubes keep their commutativity under both functors") {
        FinCube cube = projection_cube({{0}, {1}, {2}});
        CHECK(is_n_commutative(apply_functor(FunctorId::exp(), cube)));
        CHECK(is_n_commutative(apply_functor(FunctorId::sp(2), cube)));
    }
}

TEST_CASE("algebra-side functor images") {
    SUBCASE("trivial algebras have trivial images") {
        Subalgebra t = Subalgebra::trivial(3);
        CHECK(functor_image(FunctorId::exp(), t).atom_count() == 1);
        CHECK(functor_image(FunctorId::sp(2), t).atom_count() == 1);
    }
    SUBCASE("the filter ground of P(3) has 7 points") {
        Subalgebra d = Subalgebra::discrete(3);
        CHECK(functor_image(FunctorId::exp(), d).ground() == 7);
    }
    SUBCASE("images agree with the generator-based construction") {
        testgen::Rng rng(20240835);
        for (int iter = 0; iter < 60; ++iter) {
            int m = rng.uniform(1, 4);
            Subalgebra a = testgen::random_subalgebra(rng, m);
            CHECK(functor_image(FunctorId::exp(), a) ==
                  functor_image_oracle(FunctorId::exp(), a));
            CHECK(functor_image(FunctorId::sp(2), a) == functor_image_oracle(FunctorId::sp(2), a));
            if (m <= 4)
                CHECK(functor_image(FunctorId::sp(3), a) ==
                      functor_image_oracle(FunctorId::sp(3), a));
        }
    }
    SUBCASE("the exponential preserves intersections") {
        testgen::Rng rng(20240836);
        for (int iter = 0; iter < 100; ++iter) {
            int m = rng.uniform(1, 6);
            Subalgebra a = testgen::random_subalgebra(rng, m);
            Subalgebra b = testgen::random_subalgebra(rng, m);
            CHECK(functor_image(FunctorId::exp(), intersect(a, b)) ==
                  intersect(functor_image(FunctorId::exp(), a),
                            functor_image(FunctorId::exp(), b)));
        }
    }
}

TEST_CASE("pair commutativity is preserved by exp and symmetric copowers") {
    testgen::Rng rng(20240837);
    int hits = 0;
    for (int iter = 0; iter < 400 && hits < 150; ++iter) {
        int m = rng.uniform(2, 4);
        Subalgebra a = testgen::random_subalgebra(rng, m);
        Subalgebra b = testgen::random_subalgebra(rng, m);
        if (!commutes({a, b}))
            continue;
        ++hits;
        for (FunctorId f : {FunctorId::exp(), FunctorId::sp(2), FunctorId::sp(3)})
            CHECK(commutes({functor_image(f, a), functor_image(f, b)}));
    }
    CHECK(hits >= 100);
}

TEST_CASE("algebra counterexample search") {
    SUBCASE("nothing to find over a one-point ground") {
        CHECK_FALSE(search_algebra_counterexample(FunctorId::exp(), 1).found);
    }
    SUBCASE("P(4) yields a triple for sp2 and exp") {
        for (FunctorId f : {FunctorId::sp(2), FunctorId::exp()}) {
            AlgebraSearchResult r = search_algebra_counterexample(f, 4);
            REQUIRE(r.found);
            std::vector<Subalgebra> base{r.triple.begin(), r.triple.end()};
            CHECK(commutes(base));
            std::vector<Subalgebra> images;
            for (const Subalgebra& s : base)
                images.push_back(functor_image(f, s));
            CHECK_FALSE(commutes(images));
        }
        // Both searches land on the classic triple whose i-th member glues 0
        // to point i and isolates the rest.
        AlgebraSearchResult r = search_algebra_counterexample(FunctorId::exp(), 4);
        Subalgebra expected = Subalgebra::from_blocks(
            4, {Bits::from_points({0, 1}, 4), Bits::single(2), Bits::single(3)});
        CHECK(r.triple[0] == expected);
    }
}

TEST_CASE("cube counterexample search") {
    CubeSearchResult r = search_cube_counterexample(FunctorId::sp(2), 3);
    REQUIRE(r.found);
    FinCube base = projection_cube(r.indexSets);
    CHECK(is_n_commutative(base));
    CHECK_FALSE(is_n_commutative(apply_functor(FunctorId::sp(2), base)));
}
