#include "boolalg/fixtures.hpp"

#include "boolalg/commute.hpp"

#include <algorithm>

namespace boolalg {

std::vector<Element> free_generators(int k, const std::vector<int>& removedMinterms,
                                     int* groundOut) {
    std::vector<int> points;
    for (int mask = 0; mask < (1 << k); ++mask)
        if (std::find(removedMinterms.begin(), removedMinterms.end(), mask) ==
            removedMinterms.end())
            points.push_back(mask);
    int ground = static_cast<int>(points.size());
    if (groundOut)
        *groundOut = ground;
    std::vector<Element> gens;
    for (int g = 0; g < k; ++g) {
        Bits b;
        for (int p = 0; p < ground; ++p)
            if ((points[static_cast<size_t>(p)] >> g) & 1)
                b.set(p);
        gens.emplace_back(ground, b);
    }
    return gens;
}

std::vector<Subalgebra> noncomm_family() {
    return {generate_subalgebra(3, std::vector<Bits>{Bits::single(0)}),
            generate_subalgebra(3, std::vector<Bits>{Bits::single(1)})};
}

OverlapSystem badoverlap_system() {
    // Three algebras on atoms (x_i, x_{i+1}\x_i, -x_{i+1}) overlapping in the
    // one-generator algebras (x_{i+1}, -x_{i+1}), with the third chain
    // reversed: x_0 < x_1, x_1 < x_2, x_2 < -x_0.
    OverlapSystem sys;
    sys.atomCounts = {3, 3, 3};
    sys.pairs.push_back({0, 1, 2, {0, 0, 1}, {0, 1, 1}}); // shared x_1
    sys.pairs.push_back({0, 2, 2, {0, 1, 1}, {1, 1, 0}}); // shared x_0
    sys.pairs.push_back({1, 2, 2, {0, 0, 1}, {0, 1, 1}}); // shared x_2
    return sys;
}

int badoverlap_recorded_tuple_count() {
    // Oracle-recorded value: the exhaustive ideal-quotient enumeration of the
    // 27 atom tuples leaves exactly these compatible ones:
    //   (1,0,0)  (2,1,0)  (2,2,1)
    // A naive collapse argument suggests the chain forces the pushout down to
    // a single atom, but the enumeration shows three; the core claims (no
    // common extension, the first chain's bottom generator collapsing to 0)
    // hold either way.
    return 3;
}

std::vector<Subalgebra> highnotlow_family() {
    int ground = 0;
    // Points are assignments to (g0, g1, g2) with g0 & g1 forced empty.
    std::vector<Element> gens = free_generators(3, {0b011, 0b111}, &ground);
    std::vector<Subalgebra> family;
    for (int i = 0; i < 3; ++i) {
        std::vector<Element> sub;
        for (int j = 0; j < 3; ++j)
            if (j != i)
                sub.push_back(gens[static_cast<size_t>(j)]);
        family.push_back(generate_subalgebra(ground, sub));
    }
    return family;
}

std::vector<Subalgebra> lowcoherenothigh_family() {
    int ground = 0;
    std::vector<Element> gens = free_generators(3, {0b111}, &ground);
    std::vector<Subalgebra> family;
    for (const Element& g : gens)
        family.push_back(generate_subalgebra(ground, std::vector<Element>{g}));
    return family;
}

std::vector<Subalgebra> lowpairnothigh_family() {
    int ground = 0;
    std::vector<Element> gens = free_generators(2, {}, &ground);
    Element g2(ground, (gens[0].bits & gens[1].bits.complement(ground)) |
                           (gens[0].bits.complement(ground) & gens[1].bits));
    return {generate_subalgebra(ground, std::vector<Element>{gens[0]}),
            generate_subalgebra(ground, std::vector<Element>{gens[1]}),
            generate_subalgebra(ground, std::vector<Element>{g2})};
}

std::vector<Subalgebra> strictlyweakcomm_family() {
    int ground = 0;
    // Generators indexed by the two-element sets {0,1}, {0,2}, {1,2}.
    std::vector<Element> gens = free_generators(3, {0b111}, &ground);
    auto genFor = [&](int a, int b) {
        if (a > b)
            std::swap(a, b);
        if (a == 0 && b == 1)
            return gens[0];
        if (a == 0 && b == 2)
            return gens[1];
        return gens[2];
    };
    std::vector<Subalgebra> family;
    for (int i = 0; i < 3; ++i) {
        std::vector<Element> sub;
        for (int j = 0; j < 3; ++j)
            if (j != i)
                sub.push_back(genFor(i, j));
        family.push_back(generate_subalgebra(ground, sub));
    }
    return family;
}

std::vector<Subalgebra> free_generator_family() {
    int ground = 0;
    std::vector<Element> gens = free_generators(4, {}, &ground);
    auto span = [&](std::vector<int> idx) {
        std::vector<Element> sub;
        for (int i : idx)
            sub.push_back(gens[static_cast<size_t>(i)]);
        return generate_subalgebra(ground, sub);
    };
    return {span({0, 1}), span({1, 2}), span({2, 3})};
}

namespace {

void claim(FixtureReport& r, const std::string& name, bool expected, bool observed) {
    r.claims.push_back({name, expected, observed});
    if (expected != observed)
        r.passed = false;
}

FixtureReport fixture_noncomm() {
    FixtureReport r;
    r.fixture = "noncomm";
    std::vector<Subalgebra> fam = noncomm_family();
    claim(r, "pair-commutes", false, commutes(fam));
    PushoutResult p = pushout(embed_as_system(fam));
    claim(r, "pushout-has-4-atoms", true, p.atom_count() == 4);
    claim(r, "has-common-extension", true, has_common_extension(embed_as_system(fam)));
    // The disjoint pair of single-point atoms admits no weak witness: both
    // projections into the trivial intersection are 1.
    ElementFamily x{Element(3, Bits::single(0)), Element(3, Bits::single(1))};
    claim(r, "weak-witness-absent", true, !weak_witness(fam, x).has_value());
    return r;
}

FixtureReport fixture_badoverlap() {
    FixtureReport r;
    r.fixture = "badoverlap";
    OverlapSystem sys = badoverlap_system();
    claim(r, "has-common-extension", false, has_common_extension(sys));
    PushoutResult p = pushout(sys);
    claim(r, "coproj0-injective", false, p.injectivity[0].injective);
    claim(r, "atom-x0-collapses-to-zero", true,
          p.injectivity[0].collapsedAtom.has_value() && *p.injectivity[0].collapsedAtom == 0);
    PushoutResult oracle = pushout_via_ideal_quotient(sys);
    claim(r, "tuple-count-matches-recorded-oracle", true,
          p.atom_count() == badoverlap_recorded_tuple_count() &&
              oracle.atom_count() == badoverlap_recorded_tuple_count());
    AssemblyResult a = assemble(sys);
    claim(r, "assemble-fails-at-stage-2-on-trace-commutativity", true,
          !a.ok && a.failedStage == 2 && a.failure == AssemblyFailure::TraceFamilyNotCommuting);
    r.notes.push_back("compatible-tuple count recorded from the exhaustive oracle: " +
                      std::to_string(badoverlap_recorded_tuple_count()) +
                      " (a naive collapse estimate of one atom is refuted by the enumeration; "
                      "the injectivity claims hold either way)");
    return r;
}

FixtureReport fixture_highnotlow() {
    FixtureReport r;
    r.fixture = "highnotlow";
    std::vector<Subalgebra> fam = highnotlow_family();
    claim(r, "pair01-commutes", false, commutes({fam[0], fam[1]}));
    claim(r, "triple-commutes", true, commutes(fam));
    claim(r, "commutes-well-at-arity-2", false, commutes_well(fam, 2).value);
    return r;
}

FixtureReport fixture_lowcoherenothigh() {
    FixtureReport r;
    r.fixture = "lowcoherenothigh";
    std::vector<Subalgebra> fam = lowcoherenothigh_family();
    bool pairsIndependent = true, pairsCommute = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            pairsIndependent &= is_independent({fam[static_cast<size_t>(i)], fam[static_cast<size_t>(j)]});
            pairsCommute &= commutes({fam[static_cast<size_t>(i)], fam[static_cast<size_t>(j)]});
        }
    claim(r, "pairs-independent", true, pairsIndependent);
    claim(r, "stepup-h1-pairs-commute", true, pairsCommute);
    claim(r, "stepup-h2-overlap-coherent", true, overlap_coherent({fam[0], fam[1]}, fam[2]));
    claim(r, "stepup-h3-join-pair-commutes", false, join_pair_commutes({fam[0], fam[1]}, fam[2]));
    claim(r, "triple-commutes", false, commutes(fam));
    claim(r, "triple-independent", false, is_independent(fam));
    return r;
}

FixtureReport fixture_lowpairnothigh() {
    FixtureReport r;
    r.fixture = "lowpairnothigh";
    std::vector<Subalgebra> fam = lowpairnothigh_family();
    bool pairsIndependent = true, pairsCommute = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            pairsIndependent &= is_independent({fam[static_cast<size_t>(i)], fam[static_cast<size_t>(j)]});
            pairsCommute &= commutes({fam[static_cast<size_t>(i)], fam[static_cast<size_t>(j)]});
        }
    claim(r, "pairs-independent", true, pairsIndependent);
    claim(r, "stepup-h1-pairs-commute", true, pairsCommute);
    claim(r, "stepup-h2-overlap-coherent", false, overlap_coherent({fam[0], fam[1]}, fam[2]));
    claim(r, "stepup-h3-join-pair-commutes", true, join_pair_commutes({fam[0], fam[1]}, fam[2]));
    claim(r, "triple-commutes", false, commutes(fam));
    return r;
}

FixtureReport fixture_strictlyweakcomm() {
    FixtureReport r;
    r.fixture = "strictlyweakcomm";
    std::vector<Subalgebra> fam = strictlyweakcomm_family();
    claim(r, "triple-weakly-commutes", true, weakly_commutes(fam));
    claim(r, "triple-commutes", false, commutes(fam));
    claim(r, "pair01-weakly-commutes", false, weakly_commutes({fam[0], fam[1]}));
    claim(r, "stepup-h2-overlap-coherent", true, overlap_coherent({fam[0], fam[1]}, fam[2]));
    claim(r, "stepup-h3-join-pair-commutes", true, join_pair_commutes({fam[0], fam[1]}, fam[2]));
    claim(r, "trace-pair-commutes", true,
          commutes({intersect(fam[0], fam[2]), intersect(fam[1], fam[2])}));

    // The minimal witness for the all-positive atom tuple must satisfy the
    // witness invariants even though it differs from the hand-picked one.
    int m = fam[0].ground();
    int ground = 0;
    std::vector<Element> gens = free_generators(3, {0b111}, &ground);
    auto genFor = [&](int a, int b) {
        if (a > b)
            std::swap(a, b);
        if (a == 0 && b == 1)
            return gens[0];
        if (a == 0 && b == 2)
            return gens[1];
        return gens[2];
    };
    ElementFamily x;
    for (int i = 0; i < 3; ++i) {
        Bits atom = Bits::all(m);
        for (int j = 0; j < 3; ++j)
            if (j != i)
                atom &= genFor(i, j).bits;
        x.push_back(Element(m, atom));
    }
    auto witness = weak_witness(fam, x);
    bool invariantsHold = witness.has_value();
    if (witness) {
        Bits meet = Bits::all(m);
        for (int i = 0; i < 3; ++i) {
            const Element& y = witness->elements[static_cast<size_t>(i)];
            invariantsHold &= witness_algebra(fam, static_cast<size_t>(i)).is_member(y);
            invariantsHold &= x[static_cast<size_t>(i)].leq(y);
            meet &= y.bits;
        }
        invariantsHold &= meet.empty();
    }
    claim(r, "minimal-witness-satisfies-invariants", true, invariantsHold);
    return r;
}

} // namespace

std::vector<std::string> fixture_names() {
    return {"noncomm",         "badoverlap",      "highnotlow",
            "lowcoherenothigh", "lowpairnothigh", "strictlyweakcomm"};
}

FixtureReport run_fixture(const std::string& name) {
    if (name == "noncomm")
        return fixture_noncomm();
    if (name == "badoverlap")
        return fixture_badoverlap();
    if (name == "highnotlow")
        return fixture_highnotlow();
    if (name == "lowcoherenothigh")
        return fixture_lowcoherenothigh();
    if (name == "lowpairnothigh")
        return fixture_lowpairnothigh();
    if (name == "strictlyweakcomm")
        return fixture_strictlyweakcomm();
    throw schema_error("unknown fixture '" + name + "'");
}

std::vector<FixtureReport> run_all_fixtures() {
    std::vector<FixtureReport> out;
    for (const std::string& name : fixture_names())
        out.push_back(run_fixture(name));
    return out;
}

} // namespace boolalg
