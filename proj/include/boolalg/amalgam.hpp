#pragma once

#include "boolalg/commute.hpp"
#include "boolalg/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boolalg {

/// Pairwise overlap data between algebras i and j (i < j): the number of
/// atoms of the intersection algebra and the atom-level restriction maps
/// from either side onto it.
struct PairOverlap {
    int i = 0;
    int j = 0;
    int interAtoms = 0;
    std::vector<int> mapI; // atoms(A_i) -> [0, interAtoms)
    std::vector<int> mapJ; // atoms(A_j) -> [0, interAtoms)
};

/// A family of abstract finite Boolean algebras presented by atom counts and
/// pairwise overlap maps.  Both maps of every pair must be surjective: an
/// intersection atom is a nonempty union of atoms on either side.
struct OverlapSystem {
    std::vector<int> atomCounts;
    std::vector<PairOverlap> pairs; // one entry per unordered pair, i < j

    int size() const { return static_cast<int>(atomCounts.size()); }
    const PairOverlap& pair(int i, int j) const;
    /// Restriction map from atoms of algebra `from` onto the intersection
    /// with algebra `other`.
    const std::vector<int>& map_onto(int from, int other) const;
    /// Throws schema_error when the pair data is incomplete, out of range, or
    /// not surjective.
    void validate() const;
};

using CompatibleTuple = std::vector<int>;

/// Encode an embedded family as an overlap system: atom counts from the
/// partitions, maps sending each block to the intersection block containing
/// it.
OverlapSystem embed_as_system(const std::vector<Subalgebra>& family);

/// All tuples picking one atom per algebra whose picks agree on every
/// pairwise intersection, in lexicographic order.
std::vector<CompatibleTuple> compatible_tuples(const OverlapSystem& sys, Exec exec = Exec::Auto);

struct InjectivityEntry {
    bool injective = true;
    std::optional<int> collapsedAtom; // an atom occurring in no tuple
};

/// The pushout algebra of an overlap system, materialized as the powerset of
/// its compatible-tuple set, plus coprojection data.
struct PushoutResult {
    std::vector<CompatibleTuple> tuples;
    /// coprojections[i][a] = indices (into tuples) whose i-th coordinate is a.
    std::vector<std::vector<std::vector<int>>> coprojections;
    std::vector<InjectivityEntry> injectivity;

    int atom_count() const { return static_cast<int>(tuples.size()); }
    bool all_injective() const;
};

/// Computes the pushout.  For tuple spaces of at most oracle-check size
/// (4096), the ideal-quotient construction is run as an independent oracle
/// and a disagreement throws internal_error.
PushoutResult pushout(const OverlapSystem& sys, Exec exec = Exec::Auto);

/// Independent construction of the pushout: the free product over all atom
/// tuples, quotiented by the ideal generated by the pairwise disagreement
/// terms.  Only valid while the full tuple space fits the given bound.
PushoutResult pushout_via_ideal_quotient(const OverlapSystem& sys,
                                         std::uint64_t maxTuples = 4096);

/// True iff every atom of every algebra occurs in some compatible tuple,
/// i.e. all coprojections into the pushout are injective.
bool has_common_extension(const OverlapSystem& sys);

/// Trace data: for each algebra, a partition of its atoms presenting the
/// subalgebra A_i ∩ M.
using TracePartition = std::vector<std::vector<int>>;

struct ReflectionReport {
    bool ok = true;
    int failedCondition = 0; // 1..3 when !ok
    std::string detail;
};

/// Checks the three reflection conditions for the given traces inside the
/// computed pushout: (1) each trace is a partition of its algebra's atoms,
/// (2) the coprojected traces commute there, (3) each coprojected algebra
/// meets the join of the coprojected traces exactly in its own coprojected
/// trace.
ReflectionReport commutatively_reflects(const OverlapSystem& sys,
                                        const std::vector<TracePartition>& traces);

enum class AssemblyFailure {
    TraceFamilyNotCommuting,
    IncoherentIdentifications, // the mediating map is not well-defined
    ReflectionFailure,         // the mediating map is not injective
};

const char* to_string(AssemblyFailure f);

struct AssemblyStage {
    int algebra = 0; // index of the algebra added at this stage
    int ground = 0;  // point count of the stage algebra
    /// embeddings[i][p] = atom of A_i that point p lies in, for each i <= algebra.
    std::vector<std::vector<int>> embeddings;
};

struct AssemblyResult {
    bool ok = false;
    std::vector<AssemblyStage> stages;
    std::vector<std::string> log;
    // On failure:
    int failedStage = -1;
    AssemblyFailure failure = AssemblyFailure::TraceFamilyNotCommuting;
    std::string detail;
};

/// Iterated amalgamation: adds one algebra at a time, at each stage verifying
/// that the traces of the earlier algebras commute inside the new one, that
/// the mediating map from their pushout into the current algebra is
/// well-defined and injective, and that the resulting binary pushout embeds
/// both sides.  On success every input algebra is embedded in the final
/// stage; on failure the stage and the violated hypothesis are reported.
AssemblyResult assemble(const OverlapSystem& sys);

} // namespace boolalg
