// Acceptance suite: one check per shipped guarantee, each printed as a
// single PASS/FAIL line with its runtime.  Exit status is the number of
// failing checks.

#include "boolalg/commute.hpp"
#include "boolalg/cube.hpp"
#include "boolalg/fixtures.hpp"
#include "boolalg/functors.hpp"
#include "boolalg/logic.hpp"

#include "generators.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace boolalg;

namespace {

struct Criterion {
    int id;
    std::string label;
    double timeLimit; // seconds
    std::function<bool(std::string&)> run;
};

bool check(bool condition, const char* what, std::string& detail) {
    if (!condition && detail.empty())
        detail = what;
    return condition;
}

// 1. noncomm: pushout atoms, commuting verdict, common extension.
bool crit_noncomm(std::string& detail) {
    std::vector<Subalgebra> fam = noncomm_family();
    bool ok = true;
    ok &= check(pushout(embed_as_system(fam)).atom_count() == 4, "pushout must have 4 atoms",
                detail);
    ok &= check(!commutes(fam), "the pair must not commute", detail);
    ok &= check(has_common_extension(embed_as_system(fam)),
                "the pair must have a common extension", detail);
    return ok;
}

// 2. badoverlap: no common extension, collapsed atom, recorded tuple count.
bool crit_badoverlap(std::string& detail) {
    OverlapSystem sys = badoverlap_system();
    bool ok = true;
    ok &= check(!has_common_extension(sys), "no common extension expected", detail);
    PushoutResult p = pushout(sys);
    ok &= check(!p.injectivity[0].injective && p.injectivity[0].collapsedAtom == 0,
                "the first chain's bottom atom must collapse to 0", detail);
    PushoutResult oracle = pushout_via_ideal_quotient(sys);
    ok &= check(static_cast<int>(oracle.tuples.size()) <= 27, "oracle enumerates at most 27 tuples",
                detail);
    ok &= check(p.atom_count() == badoverlap_recorded_tuple_count() &&
                    oracle.atom_count() == badoverlap_recorded_tuple_count(),
                "tuple count must match the recorded oracle value", detail);
    return ok;
}

// 3. the four remaining fixtures, exact truth patterns.
bool crit_fixture_patterns(std::string& detail) {
    bool ok = true;
    for (const char* name :
         {"highnotlow", "lowcoherenothigh", "lowpairnothigh", "strictlyweakcomm"}) {
        FixtureReport rep = run_fixture(name);
        if (!rep.passed) {
            for (const FixtureClaim& c : rep.claims)
                if (c.expected != c.observed) {
                    detail = rep.fixture + ": claim '" + c.name + "' observed " +
                             (c.observed ? "true" : "false");
                    break;
                }
            ok = false;
        }
    }
    return ok;
}

// 4. pair-lemma equivalences on 10^4 randomized pairs, m <= 8.
bool crit_pair_lemma(std::string& detail) {
    testgen::Rng rng(424201);
    for (int iter = 0; iter < 10000; ++iter) {
        int m = rng.uniform(1, 8);
        Subalgebra a = testgen::random_subalgebra(rng, m);
        Subalgebra b = testgen::random_subalgebra(rng, m);
        // commutes_report cross-checks the atom-tuple result against
        // pushout-mediating injectivity internally and throws on mismatch.
        bool comm = commutes({a, b});
        bool weak = weakly_commutes({a, b});
        bool separated = commutes_over(a, b, intersect(a, b));
        // Interval condition by member enumeration.
        bool interval = true;
        Subalgebra c = intersect(a, b);
        auto cm = c.members();
        for (const Bits& x : a.members()) {
            for (const Bits& y : b.members()) {
                if (!x.subset_of(y))
                    continue;
                bool found = false;
                for (const Bits& z : cm)
                    if (x.subset_of(z) && z.subset_of(y)) {
                        found = true;
                        break;
                    }
                if (!found) {
                    interval = false;
                    break;
                }
            }
            if (!interval)
                break;
        }
        if (comm != weak || comm != separated || comm != interval) {
            detail = "pair conditions disagree at iteration " + std::to_string(iter);
            return false;
        }
    }
    return true;
}

// 5. well-commutativity and the four structural laws on 10^3 families.
bool crit_wellcomm_suite(std::string& detail) {
    testgen::Rng rng(424202);
    int families = 0;
    while (families < 1000) {
        int m = rng.uniform(2, 8);
        int n = rng.uniform(2, 4);
        std::vector<Subalgebra> fam = testgen::random_family(rng, m, n);
        ++families;

        // Theorem: weakly-commutes-well implies commutes-well (subset form).
        if (weakly_commutes_well(fam).value && !commutes_well(fam).value) {
            detail = "a weakly-well family fails to commute well";
            return false;
        }
        // Prefix form.
        bool prefixesWeak = true;
        for (int len = 2; len <= n; ++len)
            prefixesWeak &=
                weakly_commutes(std::vector<Subalgebra>(fam.begin(), fam.begin() + len));
        if (prefixesWeak)
            for (int len = 2; len <= n; ++len)
                if (!commutes(std::vector<Subalgebra>(fam.begin(), fam.begin() + len))) {
                    detail = "a weakly-well prefix family has a non-commuting prefix";
                    return false;
                }

        std::vector<Subalgebra> prefix(fam.begin(), fam.end() - 1);
        const Subalgebra& last = fam.back();
        // Stepping up.
        if (prefix.size() >= 1 && commutes(prefix) && overlap_coherent(prefix, last) &&
            join_pair_commutes(prefix, last) && !commutes(fam)) {
            detail = "stepping up fails";
            return false;
        }
        // Stepping down.
        std::vector<Subalgebra> traces;
        for (const Subalgebra& s : prefix)
            traces.push_back(intersect(s, last));
        if (commutes(fam) && commutes(traces) && !commutes(prefix)) {
            detail = "stepping down fails";
            return false;
        }
        // Grouping.
        if (commutes(fam)) {
            int groups = rng.uniform(1, n);
            std::vector<std::vector<Subalgebra>> parts(static_cast<size_t>(groups));
            for (int k = 0; k < n; ++k)
                parts[static_cast<size_t>(rng.uniform(0, groups - 1))].push_back(
                    fam[static_cast<size_t>(k)]);
            std::vector<Subalgebra> joined;
            for (auto& part : parts) {
                if (part.empty())
                    part.push_back(Subalgebra::trivial(m));
                joined.push_back(join_subalgebras(part));
            }
            if (!commutes(joined)) {
                detail = "grouping fails";
                return false;
            }
        }
        // Weak reflection.
        if (weakly_commutes(fam)) {
            if (!join_pair_commutes(prefix, last) || !overlap_coherent(prefix, last)) {
                detail = "weak reflection fails";
                return false;
            }
        }
    }
    return true;
}

// 6. pushout duality on fixtures plus 10^3 randomized systems.
bool crit_pushout_duality(std::string& detail) {
    auto agree = [&](const OverlapSystem& sys) {
        PushoutResult fast = pushout(sys, Exec::Auto);
        PushoutResult oracle = pushout_via_ideal_quotient(sys);
        return fast.tuples == oracle.tuples && fast.coprojections == oracle.coprojections;
    };
    if (!agree(badoverlap_system()) || !agree(embed_as_system(noncomm_family())) ||
        !agree(embed_as_system(highnotlow_family())) ||
        !agree(embed_as_system(strictlyweakcomm_family()))) {
        detail = "duality fails on a fixture";
        return false;
    }
    testgen::Rng rng(424203);
    for (int iter = 0; iter < 1000; ++iter) {
        OverlapSystem sys = testgen::random_system(rng, rng.uniform(1, 4), 8);
        std::uint64_t total = 1;
        for (int c : sys.atomCounts)
            total *= static_cast<std::uint64_t>(c);
        if (total > 4096)
            continue;
        if (!agree(sys)) {
            detail = "duality fails at iteration " + std::to_string(iter);
            return false;
        }
    }
    return true;
}

// 7. interpolation guarantees on 10^3 randomized unsatisfiable tuples.
bool crit_interpolation(std::string& detail) {
    testgen::Rng rng(424204);
    std::vector<std::string> names;
    for (int v = 0; v < 8; ++v)
        names.push_back(std::string(1, static_cast<char>('a' + v)));
    int done = 0;
    while (done < 1000) {
        int n = rng.uniform(2, 4);
        std::vector<FormulaPtr> phis;
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> pool;
            for (const auto& v : names)
                if (rng.coin())
                    pool.push_back(v);
            if (pool.empty())
                pool.push_back(names[static_cast<size_t>(rng.uniform(0, 7))]);
            phis.push_back(testgen::random_formula(rng, pool, 3));
        }
        std::set<std::string> allSet;
        for (const auto& f : phis) {
            auto vs = variables(f);
            allSet.insert(vs.begin(), vs.end());
        }
        std::vector<std::string> order(allSet.begin(), allSet.end());
        if (order.empty())
            continue;
        TruthTable conj = TruthTable::constant(static_cast<int>(order.size()), true);
        for (const auto& f : phis)
            conj = conj & formula_to_table(f, order);
        if (conj.any())
            continue;
        ++done;
        std::vector<FormulaPtr> psis = interpolants(phis);
        TruthTable psiConj = TruthTable::constant(static_cast<int>(order.size()), true);
        for (int i = 0; i < n; ++i) {
            if (!formula_to_table(phis[static_cast<size_t>(i)], order)
                     .subset_of(formula_to_table(psis[static_cast<size_t>(i)], order))) {
                detail = "entailment fails";
                return false;
            }
            auto own = variables(phis[static_cast<size_t>(i)]);
            std::set<std::string> others;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    auto vs = variables(phis[static_cast<size_t>(j)]);
                    others.insert(vs.begin(), vs.end());
                }
            for (const auto& v : variables(psis[static_cast<size_t>(i)]))
                if (!std::count(own.begin(), own.end(), v) || !others.count(v)) {
                    detail = "variable condition fails";
                    return false;
                }
            psiConj = psiConj & formula_to_table(psis[static_cast<size_t>(i)], order);
        }
        if (psiConj.any()) {
            detail = "outputs jointly satisfiable";
            return false;
        }
        if (n == 2) {
            // Classical reading: psi_0 is a Craig interpolant for
            // phi_0 |= !phi_1.
            if ((formula_to_table(psis[0], order) & formula_to_table(phis[1], order)).any()) {
                detail = "classical interpolant condition fails";
                return false;
            }
        }
    }
    return true;
}

// 8. functor pair preservation on 10^3 commuting pairs, m <= 4.
bool crit_pair_preservation(std::string& detail) {
    testgen::Rng rng(424205);
    int done = 0;
    while (done < 1000) {
        int m = rng.uniform(2, 4);
        Subalgebra a = testgen::random_subalgebra(rng, m);
        Subalgebra b = testgen::random_subalgebra(rng, m);
        if (!commutes({a, b}))
            continue;
        ++done;
        for (FunctorId f : {FunctorId::exp(), FunctorId::sp(2)}) {
            if (!commutes({functor_image(f, a), functor_image(f, b)})) {
                detail = "a commuting pair's " + f.name() + " images fail to commute";
                return false;
            }
        }
    }
    return true;
}

// 9. counterexample searches succeed and re-verify, within their own time
// budgets (algebra searches in 5 minutes, cube searches in 10).
bool crit_searches(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    for (FunctorId f : {FunctorId::sp(2), FunctorId::exp()}) {
        AlgebraSearchResult r = search_algebra_counterexample(f, 4);
        if (!r.found) {
            detail = "no algebra triple found in P(4) for " + f.name();
            return false;
        }
        std::vector<Subalgebra> base{r.triple.begin(), r.triple.end()};
        std::vector<Subalgebra> images;
        for (const Subalgebra& s : base)
            images.push_back(functor_image(f, s));
        if (!commutes(base) || commutes(images)) {
            detail = "algebra witness fails its re-verification for " + f.name();
            return false;
        }
    }
    if (elapsed() > 300.0) {
        detail = "algebra searches exceeded their 5-minute budget";
        return false;
    }
    start = std::chrono::steady_clock::now();
    for (FunctorId f : {FunctorId::exp(), FunctorId::sp(2)}) {
        CubeSearchResult r = search_cube_counterexample(f, 6);
        if (!r.found) {
            detail = "no cube witness found for " + f.name();
            return false;
        }
        FinCube base = projection_cube(r.indexSets);
        if (!is_n_commutative(base) || is_n_commutative(apply_functor(f, base))) {
            detail = "cube witness fails its re-verification for " + f.name();
            return false;
        }
    }
    if (elapsed() > 600.0) {
        detail = "cube searches exceeded their 10-minute budget";
        return false;
    }
    return true;
}

// 10. assembly: success on free-generator families, named failure on the
// incompatible chain system.
bool crit_assembly(std::string& detail) {
    std::vector<Subalgebra> fam = free_generator_family();
    OverlapSystem sys = embed_as_system(fam);
    AssemblyResult good = assemble(sys);
    if (!good.ok) {
        detail = "assembly fails on a free-generator family";
        return false;
    }
    const AssemblyStage& last = good.stages.back();
    for (size_t i = 0; i < fam.size(); ++i) {
        std::vector<bool> seen(static_cast<size_t>(sys.atomCounts[i]), false);
        for (int v : last.embeddings[i])
            seen[static_cast<size_t>(v)] = true;
        for (bool s : seen)
            if (!s) {
                detail = "an embedding is not injective";
                return false;
            }
    }
    for (int p = 0; p < last.ground; ++p)
        for (int i = 0; i < sys.size(); ++i)
            for (int j = i + 1; j < sys.size(); ++j)
                if (sys.map_onto(i, j)[static_cast<size_t>(
                        last.embeddings[static_cast<size_t>(i)][static_cast<size_t>(p)])] !=
                    sys.map_onto(j, i)[static_cast<size_t>(
                        last.embeddings[static_cast<size_t>(j)][static_cast<size_t>(p)])]) {
                    detail = "an embedding breaks a pairwise identification";
                    return false;
                }
    AssemblyResult bad = assemble(badoverlap_system());
    if (bad.ok || bad.failedStage != 2 ||
        bad.failure != AssemblyFailure::TraceFamilyNotCommuting) {
        detail = "the incompatible chain system does not fail at stage 2 on trace commutativity";
        return false;
    }
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "noncomm fixture: 4-atom pushout, non-commuting, common extension", 1.0,
         crit_noncomm},
        {2, "badoverlap fixture: no common extension, collapsed atom, oracle count", 1.0,
         crit_badoverlap},
        {3, "highnotlow / lowcoherenothigh / lowpairnothigh / strictlyweakcomm patterns", 1.0,
         crit_fixture_patterns},
        {4, "pair-lemma equivalences on 10^4 random pairs (m <= 8)", 60.0, crit_pair_lemma},
        {5, "well-commutativity theorem and structural laws on 10^3 families", 120.0,
         crit_wellcomm_suite},
        {6, "pushout duality against the ideal-quotient oracle (10^3 systems)", 600.0,
         crit_pushout_duality},
        {7, "interpolation guarantees on 10^3 unsatisfiable tuples", 60.0, crit_interpolation},
        {8, "exp/sp2 images of 10^3 commuting pairs commute", 600.0, crit_pair_preservation},
        {9, "algebra searches in P(4) and cube searches (universe 6) succeed", 900.0,
         crit_searches},
        {10, "assembly: success on free generators, named failure on badoverlap", 1.0,
         crit_assembly},
    };

    int failures = 0;
    for (Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool inTime = elapsed <= c.timeLimit;
        bool pass = ok && inTime;
        std::printf("[%2d] %s  (%.2fs%s)  %s\n", c.id, pass ? "PASS" : "FAIL", elapsed,
                    inTime ? "" : " OVER LIMIT", c.label.c_str());
        if (!detail.empty() && !pass)
            std::printf("     %s\n", detail.c_str());
        if (!pass)
            ++failures;
    }
    return failures;
}
