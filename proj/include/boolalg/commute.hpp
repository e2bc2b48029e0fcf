#pragma once

#include "boolalg/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boolalg {

/// Result of a tuple predicate together with the least counterexample tuple
/// (atom indices, one per subalgebra) when the predicate fails.
struct PredicateResult {
    bool value = true;
    std::optional<std::vector<int>> counterexample;
};

/// True iff every pairwise-compatible tuple of atoms (same block of the
/// pairwise intersection algebra for each pair) has nonempty meet.  For small
/// tuple spaces the verdict is cross-checked against mediating-map injectivity
/// through the pushout; a disagreement throws internal_error.
PredicateResult commutes_report(const std::vector<Subalgebra>& family, Exec exec = Exec::Auto);
bool commutes(const std::vector<Subalgebra>& family, Exec exec = Exec::Auto);

/// True iff every atom tuple with empty meet has a weak incompatibility
/// witness drawn from the joins of the pairwise intersections.  The witness
/// search is reduced to one meet test on the tuple of upper projections.
PredicateResult weakly_commutes_report(const std::vector<Subalgebra>& family,
                                       Exec exec = Exec::Auto);
bool weakly_commutes(const std::vector<Subalgebra>& family, Exec exec = Exec::Auto);

/// The join of the pairwise intersections of family[i] with the other
/// members: the algebra the weak witness for coordinate i must come from.
Subalgebra witness_algebra(const std::vector<Subalgebra>& family, size_t i);

struct WitnessTuple {
    std::vector<Element> elements;
};

/// Minimal weak incompatibility witness for the member tuple x (x[i] must be
/// a member of family[i] and the meet of x must be zero): the tuple of upper
/// projections into the witness algebras when its meet is zero, none
/// otherwise.
std::optional<WitnessTuple> weak_witness(const std::vector<Subalgebra>& family,
                                         const ElementFamily& x);

/// True iff every disjoint atom pair x in a, y in b is separated by a member
/// of c (some z in c with x <= z and z disjoint from y).
bool commutes_over(const Subalgebra& a, const Subalgebra& b, const Subalgebra& c);

/// Counterexample for the *_well drivers: the offending subset of the family
/// (by index) and the atom tuple inside it.
struct WellReport {
    bool value = true;
    std::vector<int> subset;
    std::vector<int> tuple;
};

/// True iff every subset of the family of size at most maxArity commutes.
/// Duplicate subalgebras are collapsed first; a repeated entry never changes
/// the verdict.
WellReport commutes_well(const std::vector<Subalgebra>& family,
                         std::optional<int> maxArity = std::nullopt, Exec exec = Exec::Auto);
WellReport weakly_commutes_well(const std::vector<Subalgebra>& family,
                                std::optional<int> maxArity = std::nullopt,
                                Exec exec = Exec::Auto);

/// The two side conditions of the step-up law for extending a commuting
/// family by one more algebra.
///
/// overlap_coherent: the trace of `last` in the join of `prefix` is generated
/// by the pairwise traces.
bool overlap_coherent(const std::vector<Subalgebra>& prefix, const Subalgebra& last);
/// join_pair_commutes: the join of `prefix` commutes with `last` as a pair.
bool join_pair_commutes(const std::vector<Subalgebra>& prefix, const Subalgebra& last);

} // namespace boolalg
