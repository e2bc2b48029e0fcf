#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boolalg/logic.hpp"

#include "generators.hpp"

#include <algorithm>
#include <set>

using namespace boolalg;

TEST_CASE("parsing and precedence") {
    CHECK(print_formula(parse_formula("p & q | r")) == "p & q | r");
    CHECK(same_formula(parse_formula("p & q | r"),
                       mk_or(mk_and(mk_var("p"), mk_var("q")), mk_var("r"))));
    CHECK(same_formula(parse_formula("!p -> q -> r"),
                       mk_implies(mk_not(mk_var("p")), mk_implies(mk_var("q"), mk_var("r")))));
    CHECK(same_formula(parse_formula("a <-> b <-> c"),
                       mk_iff(mk_iff(mk_var("a"), mk_var("b")), mk_var("c"))));
    CHECK(same_formula(parse_formula("true & 1"), mk_and(mk_top(), mk_top())));
    CHECK(same_formula(parse_formula("(p | q) & r"),
                       mk_and(mk_or(mk_var("p"), mk_var("q")), mk_var("r"))));
}

TEST_CASE("parse errors carry offsets") {
    CHECK_THROWS_WITH_AS(parse_formula("p &"), "expected a formula at offset 3", parse_error);
    CHECK_THROWS_AS(parse_formula("(p"), parse_error);
    CHECK_THROWS_AS(parse_formula("p q"), parse_error);
    CHECK_THROWS_AS(parse_formula(""), parse_error);
}

TEST_CASE("print then parse is the identity") {
    testgen::Rng rng(20240840);
    std::vector<std::string> pool{"a", "b", "c", "d"};
    for (int iter = 0; iter < 500; ++iter) {
        FormulaPtr f = testgen::random_formula(rng, pool, 4);
        CHECK(same_formula(parse_formula(print_formula(f)), f));
    }
}

TEST_CASE("formula_to_element") {
    std::vector<std::string> p{"p"};
    CHECK(formula_to_element(mk_top(), p) == Element(2, Bits::all(2)));
    std::vector<std::string> pq{"p", "q"};
    Element e = formula_to_element(parse_formula("p"), pq);
    CHECK(e.ground == 4);
    CHECK(e.bits.test(1));
    CHECK(e.bits.test(3));
    CHECK_FALSE(e.bits.test(0));
    CHECK(formula_to_element(parse_formula("p & !p"), pq).is_zero());
    CHECK_THROWS_AS(formula_to_element(parse_formula("z"), pq), unknown_variable);
    std::vector<std::string> nine{"a", "b", "c", "d", "e", "f", "g", "h", "i"};
    CHECK_THROWS_AS(formula_to_element(mk_top(), nine), size_overflow);
}

TEST_CASE("element_to_formula round trips") {
    SUBCASE("constants and minterms") {
        std::vector<std::string> pq{"p", "q"};
        CHECK(print_formula(element_to_formula(Element(4, Bits::none()), pq)) == "0");
        CHECK(print_formula(element_to_formula(Element(4, Bits::all(4)), pq)) == "1");
        Element point(4, Bits::single(3)); // p=1, q=1
        CHECK(print_formula(element_to_formula(point, pq)) == "p & q");
        CHECK_THROWS_AS(element_to_formula(Element(3, Bits::none()), pq), ground_mismatch);
    }
    SUBCASE("random tables") {
        testgen::Rng rng(20240841);
        std::vector<std::string> order{"a", "b", "c"};
        for (int iter = 0; iter < 300; ++iter) {
            Element x = testgen::random_element(rng, 8);
            FormulaPtr f = element_to_formula(x, order);
            CHECK(formula_to_element(f, order) == x);
        }
    }
}

TEST_CASE("quantification computes the least cylinder above") {
    testgen::Rng rng(20240842);
    for (int iter = 0; iter < 200; ++iter) {
        int vars = rng.uniform(1, 6);
        TruthTable t = TruthTable::constant(vars, false);
        for (std::uint64_t row = 0; row < t.rows(); ++row)
            if (rng.coin())
                t.set(row);
        std::uint32_t keep = static_cast<std::uint32_t>(rng.uniform(0, (1 << vars) - 1));
        TruthTable proj = exists_project(t, keep);
        CHECK(t.subset_of(proj));
        // The projection is a cylinder: flipping a dropped variable never
        // changes membership.
        for (std::uint64_t row = 0; row < t.rows(); ++row)
            for (int v = 0; v < vars; ++v)
                if (!((keep >> v) & 1))
                    CHECK(proj.test(row) == proj.test(row ^ (std::uint64_t{1} << v)));
        // And it is the least one above t.
        for (std::uint64_t row = 0; row < t.rows(); ++row) {
            if (!proj.test(row))
                continue;
            bool needed = false;
            for (std::uint64_t other = 0; other < t.rows() && !needed; ++other) {
                if (!t.test(other))
                    continue;
                std::uint64_t diff = row ^ other;
                bool sameKept = true;
                for (int v = 0; v < vars; ++v)
                    if (((keep >> v) & 1) && ((diff >> v) & 1))
                        sameKept = false;
                if (sameKept)
                    needed = true;
            }
            CHECK(proj.test(row) == needed);
        }
    }
}

TEST_CASE("interpolants: worked examples") {
    SUBCASE("already interpolants") {
        auto psis = interpolants({parse_formula("p"), parse_formula("!p")});
        REQUIRE(psis.size() == 2);
        CHECK(print_formula(psis[0]) == "p");
        CHECK(print_formula(psis[1]) == "!p");
    }
    SUBCASE("projection strips private variables") {
        auto psis = interpolants({parse_formula("p & q"), parse_formula("!p & r")});
        CHECK(print_formula(psis[0]) == "p");
        CHECK(print_formula(psis[1]) == "!p");
    }
    SUBCASE("three formulas each already in their shared algebra") {
        auto psis = interpolants(
            {parse_formula("a & b"), parse_formula("!a & c"), parse_formula("!b & !c")});
        std::vector<std::string> order{"a", "b", "c"};
        CHECK(formula_to_table(psis[0], order) ==
              formula_to_table(parse_formula("a & b"), order));
        CHECK(formula_to_table(psis[1], order) ==
              formula_to_table(parse_formula("!a & c"), order));
        CHECK(formula_to_table(psis[2], order) ==
              formula_to_table(parse_formula("!b & !c"), order));
    }
    SUBCASE("satisfiable input reports a model") {
        CHECK_THROWS_AS(interpolants({parse_formula("p"), parse_formula("q")}), satisfiable_input);
        try {
            interpolants({parse_formula("p"), parse_formula("q")});
        } catch (const satisfiable_input& e) {
            bool p = false, q = false;
            for (auto& [name, value] : e.model()) {
                if (name == "p")
                    p = value;
                if (name == "q")
                    q = value;
            }
            CHECK(p);
            CHECK(q);
        }
    }
}

namespace {

struct InterBundle {
    std::vector<FormulaPtr> phis;
    std::vector<FormulaPtr> psis;
    std::vector<std::string> order;
};

InterBundle random_unsat_bundle(testgen::Rng& rng, int maxFormulas, int maxVars) {
    std::vector<std::string> names;
    for (int v = 0; v < maxVars; ++v)
        names.push_back(std::string(1, static_cast<char>('a' + v)));
    while (true) {
        int n = rng.uniform(2, maxFormulas);
        std::vector<FormulaPtr> phis;
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> pool;
            for (const auto& v : names)
                if (rng.coin())
                    pool.push_back(v);
            if (pool.empty())
                pool.push_back(names[static_cast<size_t>(rng.uniform(0, maxVars - 1))]);
            phis.push_back(testgen::random_formula(rng, pool, 3));
        }
        std::vector<std::string> order;
        {
            std::set<std::string> all;
            for (const auto& f : phis) {
                auto vs = variables(f);
                all.insert(vs.begin(), vs.end());
            }
            order.assign(all.begin(), all.end());
        }
        if (order.empty())
            continue;
        TruthTable conj = TruthTable::constant(static_cast<int>(order.size()), true);
        for (const auto& f : phis)
            conj = conj & formula_to_table(f, order);
        if (conj.any())
            continue;
        InterBundle b;
        b.phis = phis;
        b.psis = interpolants(phis);
        b.order = order;
        return b;
    }
}

} // namespace

TEST_CASE("interpolants satisfy the three guarantees on random unsatisfiable tuples") {
    testgen::Rng rng(20240843);
    for (int iter = 0; iter < 200; ++iter) {
        InterBundle b = random_unsat_bundle(rng, 4, 6);
        TruthTable conj = TruthTable::constant(static_cast<int>(b.order.size()), true);
        for (size_t i = 0; i < b.phis.size(); ++i) {
            // Entailment.
            CHECK(formula_to_table(b.phis[i], b.order)
                      .subset_of(formula_to_table(b.psis[i], b.order)));
            // Variable condition.
            auto own = variables(b.phis[i]);
            std::set<std::string> others;
            for (size_t j = 0; j < b.phis.size(); ++j)
                if (j != i) {
                    auto vs = variables(b.phis[j]);
                    others.insert(vs.begin(), vs.end());
                }
            for (const auto& v : variables(b.psis[i])) {
                CHECK(std::count(own.begin(), own.end(), v) == 1);
                CHECK(others.count(v) == 1);
            }
            conj = conj & formula_to_table(b.psis[i], b.order);
        }
        // Joint unsatisfiability.
        CHECK_FALSE(conj.any());
    }
}

TEST_CASE("each output is the least member of its shared algebra above its input") {
    testgen::Rng rng(20240844);
    for (int iter = 0; iter < 100; ++iter) {
        InterBundle b = random_unsat_bundle(rng, 3, 5);
        for (size_t i = 0; i < b.phis.size(); ++i) {
            auto shared = variables(b.psis[i]);
            if (shared.size() > 4)
                continue;
            // Enumerate every member of the subalgebra generated by the
            // shared variables and check minimality directly.
            std::uint32_t sharedMask = 0;
            for (size_t v = 0; v < b.order.size(); ++v)
                if (std::count(shared.begin(), shared.end(), b.order[v]))
                    sharedMask |= std::uint32_t{1} << v;
            TruthTable phi = formula_to_table(b.phis[i], b.order);
            TruthTable psi = formula_to_table(b.psis[i], b.order);
            std::uint64_t patterns = std::uint64_t{1} << (std::uint64_t{1} << shared.size());
            for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
                // Build the member with this pattern over the shared vars.
                TruthTable member = TruthTable::constant(static_cast<int>(b.order.size()), false);
                for (std::uint64_t row = 0; row < member.rows(); ++row) {
                    std::uint64_t key = 0;
                    int bit = 0;
                    for (size_t v = 0; v < b.order.size(); ++v)
                        if ((sharedMask >> v) & 1) {
                            if ((row >> v) & 1)
                                key |= std::uint64_t{1} << bit;
                            ++bit;
                        }
                    if ((pattern >> key) & 1)
                        member.set(row);
                }
                if (phi.subset_of(member))
                    CHECK(psi.subset_of(member));
            }
        }
    }
}


TEST_CASE("two formulas reduce to classical interpolation") {
    testgen::Rng rng(20240845);
    for (int iter = 0; iter < 200; ++iter) {
        InterBundle b = random_unsat_bundle(rng, 2, 6);
        TruthTable phi1 = formula_to_table(b.phis[1], b.order);
        TruthTable psi0 = formula_to_table(b.psis[0], b.order);
        CHECK(formula_to_table(b.phis[0], b.order).subset_of(psi0));
        CHECK_FALSE((psi0 & phi1).any());
        auto h0 = variables(b.phis[0]);
        auto h1 = variables(b.phis[1]);
        for (const auto& v : variables(b.psis[0])) {
            CHECK(std::count(h0.begin(), h0.end(), v) == 1);
            CHECK(std::count(h1.begin(), h1.end(), v) == 1);
        }
    }
}

TEST_CASE("variable cap is enforced") {
    std::vector<FormulaPtr> phis;
    FormulaPtr big = mk_var("v0");
    for (int v = 1; v <= 20; ++v)
        big = mk_and(big, mk_var("v" + std::to_string(v)));
    phis.push_back(big);
    phis.push_back(mk_not(mk_var("v0")));
    CHECK_THROWS_AS(interpolants(phis), size_overflow);
}
