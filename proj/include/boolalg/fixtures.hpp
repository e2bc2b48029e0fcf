#pragma once

#include "boolalg/amalgam.hpp"
#include "boolalg/core.hpp"

#include <string>
#include <vector>

namespace boolalg {

struct FixtureClaim {
    std::string name;
    bool expected = true;
    bool observed = false;
};

struct FixtureReport {
    std::string fixture;
    std::vector<FixtureClaim> claims;
    std::vector<std::string> notes;
    bool passed = true;
};

/// Compiled-in regression fixtures: small overlapping-algebra configurations
/// with pinned commutativity/amalgamation behavior.
std::vector<std::string> fixture_names();
FixtureReport run_fixture(const std::string& name);
std::vector<FixtureReport> run_all_fixtures();

// --- fixture builders (shared with the test suites) ---

/// P(2^k) with the k generator splits (bit i of a point gives the value of
/// generator i), optionally with some minterm points removed.
std::vector<Element> free_generators(int k, const std::vector<int>& removedMinterms,
                                     int* groundOut);

/// Two single-point splits of a 3-point ground whose pushout has four atoms.
std::vector<Subalgebra> noncomm_family();

/// Three 3-atom algebras overlapping in three 2-atom chains that admit no
/// common extension.
OverlapSystem badoverlap_system();
/// Compatible-tuple count of badoverlap_system, recorded from the exhaustive
/// ideal-quotient oracle (regenerate with `boolalg verify-paper
/// --regenerate-oracles`).
int badoverlap_recorded_tuple_count();

/// Triple over the 6-point ground with one pairwise meet forced empty: the
/// triple commutes although the pair (A0, A1) does not.
std::vector<Subalgebra> highnotlow_family();

/// Single-generator triple over the 7-point ground with the all-true minterm
/// removed: pairwise independent, jointly non-commuting.
std::vector<Subalgebra> lowcoherenothigh_family();

/// Two free splits of a 4-point ground plus their symmetric difference:
/// pairwise independent, jointly non-commuting.
std::vector<Subalgebra> lowpairnothigh_family();

/// Pairwise-generator triple over the 7-point ground with the all-true
/// minterm removed: weakly commutes as a triple, does not commute, and the
/// pair (A0, A1) does not even weakly commute.
std::vector<Subalgebra> strictlyweakcomm_family();

/// Subalgebras of a free algebra generated by overlapping generator subsets;
/// every tuple commutes and assembly succeeds.
std::vector<Subalgebra> free_generator_family();

} // namespace boolalg
