#include "boolalg/amalgam.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boolalg {

namespace {

constexpr std::uint64_t kParallelThreshold = 4096;
constexpr std::uint64_t kOracleBound = 4096;

std::uint64_t full_tuple_count(const OverlapSystem& sys) {
    std::uint64_t total = 1;
    for (int c : sys.atomCounts) {
        total *= static_cast<std::uint64_t>(c);
        if (total > (std::uint64_t{1} << 62))
            return std::uint64_t{1} << 62;
    }
    return total;
}

} // namespace

const PairOverlap& OverlapSystem::pair(int i, int j) const {
    if (i > j)
        std::swap(i, j);
    for (const PairOverlap& p : pairs)
        if (p.i == i && p.j == j)
            return p;
    throw schema_error("missing overlap data for pair {" + std::to_string(i) + "," +
                       std::to_string(j) + "}");
}

const std::vector<int>& OverlapSystem::map_onto(int from, int other) const {
    const PairOverlap& p = pair(from, other);
    return from < other ? (p.i == from ? p.mapI : p.mapJ) : (p.j == from ? p.mapJ : p.mapI);
}

void OverlapSystem::validate() const {
    int n = size();
    if (n < 1)
        throw schema_error("an overlap system needs at least one algebra");
    for (int c : atomCounts)
        if (c < 1)
            throw schema_error("every algebra needs at least one atom");
    std::vector<std::vector<bool>> have(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    for (const PairOverlap& p : pairs) {
        if (p.i < 0 || p.j <= p.i || p.j >= n)
            throw schema_error("pair indices must satisfy 0 <= i < j < n");
        if (have[static_cast<size_t>(p.i)][static_cast<size_t>(p.j)])
            throw schema_error("duplicate overlap data for pair {" + std::to_string(p.i) + "," +
                               std::to_string(p.j) + "}");
        have[static_cast<size_t>(p.i)][static_cast<size_t>(p.j)] = true;
        if (p.interAtoms < 1)
            throw schema_error("intersection algebras need at least one atom");
        auto check = [&](const std::vector<int>& map, int count, const char* side) {
            if (static_cast<int>(map.size()) != count)
                throw schema_error(std::string("restriction map ") + side + " of pair {" +
                                   std::to_string(p.i) + "," + std::to_string(p.j) +
                                   "} has the wrong length");
            std::vector<bool> hit(static_cast<size_t>(p.interAtoms), false);
            for (int v : map) {
                if (v < 0 || v >= p.interAtoms)
                    throw schema_error(std::string("restriction map ") + side +
                                       " has a value outside the intersection atom range");
                hit[static_cast<size_t>(v)] = true;
            }
            if (std::find(hit.begin(), hit.end(), false) != hit.end())
                throw schema_error(std::string("restriction map ") + side + " of pair {" +
                                   std::to_string(p.i) + "," + std::to_string(p.j) +
                                   "} is not surjective");
        };
        check(p.mapI, atomCounts[static_cast<size_t>(p.i)], "mapI");
        check(p.mapJ, atomCounts[static_cast<size_t>(p.j)], "mapJ");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!have[static_cast<size_t>(i)][static_cast<size_t>(j)])
                throw schema_error("missing overlap data for pair {" + std::to_string(i) + "," +
                                   std::to_string(j) + "}");
}

OverlapSystem embed_as_system(const std::vector<Subalgebra>& family) {
    common_ground(family);
    OverlapSystem sys;
    for (const Subalgebra& s : family)
        sys.atomCounts.push_back(s.atom_count());
    int n = sys.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Subalgebra c = intersect(family[static_cast<size_t>(i)], family[static_cast<size_t>(j)]);
            auto table = c.block_index_table();
            PairOverlap p;
            p.i = i;
            p.j = j;
            p.interAtoms = c.atom_count();
            for (int a = 0; a < family[static_cast<size_t>(i)].atom_count(); ++a)
                p.mapI.push_back(table[static_cast<size_t>(
                    family[static_cast<size_t>(i)].block(a).lowest())]);
            for (int b = 0; b < family[static_cast<size_t>(j)].atom_count(); ++b)
                p.mapJ.push_back(table[static_cast<size_t>(
                    family[static_cast<size_t>(j)].block(b).lowest())]);
            sys.pairs.push_back(std::move(p));
        }
    return sys;
}

namespace {

/// Depth-first enumeration of compatible tuples with first coordinate fixed.
void tuples_subtree(const OverlapSystem& sys, int first, std::vector<CompatibleTuple>& out) {
    int n = sys.size();
    std::vector<int> tuple(static_cast<size_t>(n), -1);
    tuple[0] = first;
    if (n == 1) {
        out.push_back(tuple);
        return;
    }
    std::vector<int> cursor(static_cast<size_t>(n), 0);
    int depth = 1;
    // Per-depth views of the constraint maps, resolved once.
    std::vector<std::vector<const std::vector<int>*>> mapsToPrev(static_cast<size_t>(n)),
        mapsFromPrev(static_cast<size_t>(n));
    for (int d = 1; d < n; ++d)
        for (int j = 0; j < d; ++j) {
            mapsToPrev[static_cast<size_t>(d)].push_back(&sys.map_onto(d, j));
            mapsFromPrev[static_cast<size_t>(d)].push_back(&sys.map_onto(j, d));
        }
    while (true) {
        int a = cursor[static_cast<size_t>(depth)];
        if (a >= sys.atomCounts[static_cast<size_t>(depth)]) {
            cursor[static_cast<size_t>(depth)] = 0;
            --depth;
            if (depth == 0)
                return;
            ++cursor[static_cast<size_t>(depth)];
            continue;
        }
        bool compatible = true;
        for (int j = 0; j < depth; ++j) {
            const auto& mine = *mapsToPrev[static_cast<size_t>(depth)][static_cast<size_t>(j)];
            const auto& theirs = *mapsFromPrev[static_cast<size_t>(depth)][static_cast<size_t>(j)];
            if (mine[static_cast<size_t>(a)] != theirs[static_cast<size_t>(tuple[static_cast<size_t>(j)])]) {
                compatible = false;
                break;
            }
        }
        if (!compatible) {
            ++cursor[static_cast<size_t>(depth)];
            continue;
        }
        tuple[static_cast<size_t>(depth)] = a;
        if (depth + 1 == n) {
            out.push_back(tuple);
            ++cursor[static_cast<size_t>(depth)];
        } else {
            ++depth;
        }
    }
}

} // namespace

std::vector<CompatibleTuple> compatible_tuples(const OverlapSystem& sys, Exec exec) {
    sys.validate();
    int firstAtoms = sys.atomCounts[0];
    bool parallel = exec == Exec::Parallel ||
                    (exec == Exec::Auto && full_tuple_count(sys) >= kParallelThreshold);
#ifdef _OPENMP
    if (parallel && sys.size() > 1) {
        std::vector<std::vector<CompatibleTuple>> chunks(static_cast<size_t>(firstAtoms));
#pragma omp parallel for schedule(dynamic)
        for (int a = 0; a < firstAtoms; ++a)
            tuples_subtree(sys, a, chunks[static_cast<size_t>(a)]);
        std::vector<CompatibleTuple> out;
        for (auto& c : chunks)
            out.insert(out.end(), c.begin(), c.end());
        return out;
    }
#else
    (void)parallel;
#endif
    std::vector<CompatibleTuple> out;
    for (int a = 0; a < firstAtoms; ++a)
        tuples_subtree(sys, a, out);
    return out;
}

namespace {

PushoutResult result_from_tuples(const OverlapSystem& sys, std::vector<CompatibleTuple> tuples) {
    PushoutResult r;
    r.tuples = std::move(tuples);
    int n = sys.size();
    r.coprojections.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        r.coprojections[static_cast<size_t>(i)].resize(
            static_cast<size_t>(sys.atomCounts[static_cast<size_t>(i)]));
    for (size_t t = 0; t < r.tuples.size(); ++t)
        for (int i = 0; i < n; ++i)
            r.coprojections[static_cast<size_t>(i)][static_cast<size_t>(r.tuples[t][static_cast<size_t>(i)])]
                .push_back(static_cast<int>(t));
    for (int i = 0; i < n; ++i) {
        InjectivityEntry e;
        for (int a = 0; a < sys.atomCounts[static_cast<size_t>(i)]; ++a)
            if (r.coprojections[static_cast<size_t>(i)][static_cast<size_t>(a)].empty()) {
                e.injective = false;
                e.collapsedAtom = a;
                break;
            }
        r.injectivity.push_back(e);
    }
    return r;
}

} // namespace

bool PushoutResult::all_injective() const {
    for (const InjectivityEntry& e : injectivity)
        if (!e.injective)
            return false;
    return true;
}

PushoutResult pushout_via_ideal_quotient(const OverlapSystem& sys, std::uint64_t maxTuples) {
    sys.validate();
    std::uint64_t total = full_tuple_count(sys);
    if (total > maxTuples)
        throw size_overflow("free product of " + std::to_string(total) +
                            " atom tuples exceeds the ideal-quotient oracle bound");
    int n = sys.size();
    // Enumerate the free product's atoms (all tuples) in lexicographic order.
    std::vector<CompatibleTuple> all;
    CompatibleTuple t(static_cast<size_t>(n), 0);
    while (true) {
        all.push_back(t);
        int pos = n - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] + 1 == sys.atomCounts[static_cast<size_t>(pos)]) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++t[static_cast<size_t>(pos)];
    }
    // The ideal is generated by all terms pairing an intersection element on
    // one side with its complement on the other; its union marks the tuples
    // that the quotient kills.  Enumerate every generator term per pair and
    // record which (value-on-side-i, value-on-side-j) combinations it covers.
    std::vector<bool> killed(all.size(), false);
    for (const PairOverlap& p : sys.pairs) {
        if (p.interAtoms > 16)
            throw size_overflow("ideal-quotient oracle limited to 16 intersection atoms");
        std::vector<std::vector<bool>> covered(
            static_cast<size_t>(p.interAtoms),
            std::vector<bool>(static_cast<size_t>(p.interAtoms), false));
        for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << p.interAtoms); ++sub)
            for (int vi = 0; vi < p.interAtoms; ++vi)
                for (int vj = 0; vj < p.interAtoms; ++vj)
                    if (((sub >> vi) & 1u) && !((sub >> vj) & 1u))
                        covered[static_cast<size_t>(vi)][static_cast<size_t>(vj)] = true;
        for (size_t idx = 0; idx < all.size(); ++idx) {
            int vi = p.mapI[static_cast<size_t>(all[idx][static_cast<size_t>(p.i)])];
            int vj = p.mapJ[static_cast<size_t>(all[idx][static_cast<size_t>(p.j)])];
            if (covered[static_cast<size_t>(vi)][static_cast<size_t>(vj)])
                killed[idx] = true;
        }
    }
    std::vector<CompatibleTuple> surviving;
    for (size_t idx = 0; idx < all.size(); ++idx)
        if (!killed[idx])
            surviving.push_back(all[idx]);
    return result_from_tuples(sys, std::move(surviving));
}

PushoutResult pushout(const OverlapSystem& sys, Exec exec) {
    PushoutResult r = result_from_tuples(sys, compatible_tuples(sys, exec));
    if (full_tuple_count(sys) <= kOracleBound) {
        PushoutResult oracle = pushout_via_ideal_quotient(sys);
        if (oracle.tuples != r.tuples || oracle.coprojections != r.coprojections)
            throw internal_error(
                "ideal-quotient pushout disagrees with the compatible-tuple construction");
    }
    return r;
}

bool has_common_extension(const OverlapSystem& sys) {
    return result_from_tuples(sys, compatible_tuples(sys)).all_injective();
}

namespace {

/// The subalgebra of the powerset over the pushout's tuple set obtained by
/// grouping tuples by the class of their i-th coordinate.
Subalgebra coprojected(const std::vector<CompatibleTuple>& tuples, int i,
                       const std::vector<int>& atomClass, int groundSize) {
    std::map<int, Bits> byClass;
    for (size_t t = 0; t < tuples.size(); ++t)
        byClass[atomClass[static_cast<size_t>(tuples[t][static_cast<size_t>(i)])]].set(
            static_cast<int>(t));
    std::vector<Bits> blocks;
    for (auto& [cls, bits] : byClass)
        blocks.push_back(bits);
    return Subalgebra::from_blocks(groundSize, std::move(blocks));
}

} // namespace

ReflectionReport commutatively_reflects(const OverlapSystem& sys,
                                        const std::vector<TracePartition>& traces) {
    sys.validate();
    int n = sys.size();
    if (static_cast<int>(traces.size()) != n)
        throw schema_error("one trace partition per algebra is required");
    // Condition (1): each trace partitions its algebra's atoms.
    std::vector<std::vector<int>> traceClass(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int atoms = sys.atomCounts[static_cast<size_t>(i)];
        std::vector<int>& cls = traceClass[static_cast<size_t>(i)];
        cls.assign(static_cast<size_t>(atoms), -1);
        for (size_t b = 0; b < traces[static_cast<size_t>(i)].size(); ++b) {
            if (traces[static_cast<size_t>(i)][b].empty())
                return {false, 1, "trace of algebra " + std::to_string(i) + " has an empty block"};
            for (int a : traces[static_cast<size_t>(i)][b]) {
                if (a < 0 || a >= atoms || cls[static_cast<size_t>(a)] != -1)
                    return {false, 1,
                            "trace of algebra " + std::to_string(i) +
                                " is not a partition of its atoms"};
                cls[static_cast<size_t>(a)] = static_cast<int>(b);
            }
        }
        if (std::find(cls.begin(), cls.end(), -1) != cls.end())
            return {false, 1,
                    "trace of algebra " + std::to_string(i) + " does not cover all atoms"};
    }
    std::vector<CompatibleTuple> tuples = compatible_tuples(sys);
    int ground = static_cast<int>(tuples.size());
    if (ground == 0)
        return {true, 0, "degenerate pushout; conditions hold vacuously"};
    if (ground > kMaxGround)
        throw size_overflow("pushout has " + std::to_string(ground) +
                            " atoms, beyond the dense-representation cap");

    std::vector<Subalgebra> coprojAlgebras, coprojTraces;
    for (int i = 0; i < n; ++i) {
        std::vector<int> identity(static_cast<size_t>(sys.atomCounts[static_cast<size_t>(i)]));
        std::iota(identity.begin(), identity.end(), 0);
        coprojAlgebras.push_back(coprojected(tuples, i, identity, ground));
        coprojTraces.push_back(coprojected(tuples, i, traceClass[static_cast<size_t>(i)], ground));
    }
    // Condition (2): the coprojected traces commute inside the pushout.
    PredicateResult comm = commutes_report(coprojTraces);
    if (!comm.value) {
        std::string detail = "coprojected traces fail to commute at atom tuple (";
        for (size_t k = 0; k < comm.counterexample->size(); ++k)
            detail += (k ? "," : "") + std::to_string((*comm.counterexample)[k]);
        detail += ")";
        return {false, 2, detail};
    }
    // Condition (3): each coprojected algebra meets the join of the
    // coprojected traces exactly in its own coprojected trace.
    Subalgebra traceJoin = join_subalgebras(coprojTraces);
    for (int i = 0; i < n; ++i) {
        Subalgebra lhs = intersect(coprojAlgebras[static_cast<size_t>(i)], traceJoin);
        const Subalgebra& rhs = coprojTraces[static_cast<size_t>(i)];
        if (lhs != rhs) {
            // lhs refines rhs, so some lhs member fails rhs membership.
            for (const Bits& b : lhs.blocks())
                if (!rhs.is_member(b)) {
                    auto pts = b.to_points();
                    std::string detail = "algebra " + std::to_string(i) +
                                         ": pushout element over tuples {";
                    for (size_t k = 0; k < pts.size(); ++k)
                        detail += (k ? "," : "") + std::to_string(pts[k]);
                    detail += "} lies in the join of the traces but not in the trace";
                    return {false, 3, detail};
                }
            return {false, 3, "algebra " + std::to_string(i) + ": trace intersection mismatch"};
        }
    }
    return {true, 0, ""};
}

const char* to_string(AssemblyFailure f) {
    switch (f) {
    case AssemblyFailure::TraceFamilyNotCommuting:
        return "trace-family-not-commuting";
    case AssemblyFailure::IncoherentIdentifications:
        return "incoherent-identifications";
    case AssemblyFailure::ReflectionFailure:
        return "reflection-failure";
    }
    return "unknown";
}

AssemblyResult assemble(const OverlapSystem& sys) {
    sys.validate();
    int n = sys.size();
    AssemblyResult res;

    // Stage 0: the first algebra itself, points = its atoms.
    std::vector<std::vector<int>> emb(1); // emb[i][p] = atom of A_i containing point p
    emb[0].resize(static_cast<size_t>(sys.atomCounts[0]));
    std::iota(emb[0].begin(), emb[0].end(), 0);
    int ground = sys.atomCounts[0];
    res.stages.push_back({0, ground, emb});
    res.log.push_back("stage 0: algebra 0 with " + std::to_string(ground) + " atoms");

    for (int m = 1; m < n; ++m) {
        int atomsM = sys.atomCounts[static_cast<size_t>(m)];
        // Traces of the earlier algebras inside A_m, via the pair maps.
        std::vector<const std::vector<int>*> traceOfAtom(static_cast<size_t>(m));
        std::vector<Subalgebra> traceAlgebras;
        for (int i = 0; i < m; ++i) {
            traceOfAtom[static_cast<size_t>(i)] = &sys.map_onto(m, i);
            std::map<int, Bits> byClass;
            for (int a = 0; a < atomsM; ++a)
                byClass[(*traceOfAtom[static_cast<size_t>(i)])[static_cast<size_t>(a)]].set(a);
            std::vector<Bits> blocks;
            for (auto& [cls, bits] : byClass)
                blocks.push_back(bits);
            traceAlgebras.push_back(Subalgebra::from_blocks(atomsM, std::move(blocks)));
        }
        PredicateResult traceComm = commutes_report(traceAlgebras);
        if (!traceComm.value) {
            res.failedStage = m;
            res.failure = AssemblyFailure::TraceFamilyNotCommuting;
            res.detail = "traces of the earlier algebras do not commute inside algebra " +
                         std::to_string(m);
            return res;
        }
        res.log.push_back("stage " + std::to_string(m) + ": trace family commutes in algebra " +
                          std::to_string(m));

        // D = pushout of the trace family, realized inside A_m as the
        // subalgebra generated by the traces; its atoms are the realized
        // trace-class tuples.
        std::map<std::vector<int>, int> dAtomOfKey;
        std::vector<int> dAtomOfAtom(static_cast<size_t>(atomsM));
        for (int a = 0; a < atomsM; ++a) {
            std::vector<int> key(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i)
                key[static_cast<size_t>(i)] = (*traceOfAtom[static_cast<size_t>(i)])[static_cast<size_t>(a)];
            auto [it, inserted] = dAtomOfKey.try_emplace(key, static_cast<int>(dAtomOfKey.size()));
            dAtomOfAtom[static_cast<size_t>(a)] = it->second;
        }

        // The mediating map g sends each atom of D to the set of current
        // points whose pairwise identifications name exactly that trace-class
        // tuple.  g is well-defined iff every point's tuple is realized.
        std::vector<int> dAtomOfPoint(static_cast<size_t>(ground));
        std::vector<int> hit(dAtomOfKey.size(), 0);
        for (int p = 0; p < ground; ++p) {
            std::vector<int> key(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i)
                key[static_cast<size_t>(i)] =
                    sys.map_onto(i, m)[static_cast<size_t>(emb[static_cast<size_t>(i)][static_cast<size_t>(p)])];
            auto it = dAtomOfKey.find(key);
            if (it == dAtomOfKey.end()) {
                res.failedStage = m;
                res.failure = AssemblyFailure::IncoherentIdentifications;
                res.detail = "point " + std::to_string(p) +
                             " of the current stage carries identifications not realized inside "
                             "algebra " +
                             std::to_string(m) + "; the mediating map is not well-defined";
                return res;
            }
            dAtomOfPoint[static_cast<size_t>(p)] = it->second;
            ++hit[static_cast<size_t>(it->second)];
        }
        for (size_t d = 0; d < hit.size(); ++d)
            if (hit[d] == 0) {
                res.failedStage = m;
                res.failure = AssemblyFailure::ReflectionFailure;
                res.detail = "trace atom " + std::to_string(d) +
                             " maps to zero under the mediating map; the map is not injective";
                return res;
            }
        res.log.push_back("stage " + std::to_string(m) +
                          ": mediating map is well-defined and injective (" +
                          std::to_string(hit.size()) + " trace atoms)");

        // Binary pushout of A_m <- D -> B over the shared D: points are the
        // compatible (atom, point) pairs.
        std::vector<std::pair<int, int>> newPoints;
        for (int a = 0; a < atomsM; ++a)
            for (int p = 0; p < ground; ++p)
                if (dAtomOfAtom[static_cast<size_t>(a)] == dAtomOfPoint[static_cast<size_t>(p)])
                    newPoints.emplace_back(a, p);
        if (static_cast<int>(newPoints.size()) > size_cap())
            throw size_overflow("assembly stage exceeds the size cap");
        std::vector<std::vector<int>> newEmb(static_cast<size_t>(m) + 1);
        for (int i = 0; i < m; ++i) {
            newEmb[static_cast<size_t>(i)].reserve(newPoints.size());
            for (auto& [a, p] : newPoints)
                newEmb[static_cast<size_t>(i)].push_back(emb[static_cast<size_t>(i)][static_cast<size_t>(p)]);
        }
        newEmb[static_cast<size_t>(m)].reserve(newPoints.size());
        for (auto& [a, p] : newPoints)
            newEmb[static_cast<size_t>(m)].push_back(a);

        // Both coprojections must be embeddings (surjective dual point maps),
        // and every pairwise identification must hold on the new points.
        for (int i = 0; i <= m; ++i) {
            std::vector<bool> seen(static_cast<size_t>(sys.atomCounts[static_cast<size_t>(i)]), false);
            for (int v : newEmb[static_cast<size_t>(i)])
                seen[static_cast<size_t>(v)] = true;
            if (std::find(seen.begin(), seen.end(), false) != seen.end())
                throw internal_error("assembly stage lost an atom of an embedded algebra");
        }
        for (size_t q = 0; q < newPoints.size(); ++q)
            for (int i = 0; i <= m; ++i)
                for (int j = i + 1; j <= m; ++j)
                    if (sys.map_onto(i, j)[static_cast<size_t>(newEmb[static_cast<size_t>(i)][q])] !=
                        sys.map_onto(j, i)[static_cast<size_t>(newEmb[static_cast<size_t>(j)][q])])
                        throw internal_error("assembly stage broke a pairwise identification");
        res.log.push_back("stage " + std::to_string(m) + ": binary pushout has " +
                          std::to_string(newPoints.size()) +
                          " atoms; both sides embed and all identifications hold");

        emb = std::move(newEmb);
        ground = static_cast<int>(newPoints.size());
        res.stages.push_back({m, ground, emb});
    }
    res.ok = true;
    return res;
}

} // namespace boolalg
