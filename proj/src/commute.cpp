#include "boolalg/commute.hpp"

#include "boolalg/amalgam.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boolalg {

namespace {

constexpr std::uint64_t kParallelThreshold = 4096;
constexpr std::uint64_t kCrossCheckBound = 1000000;

std::uint64_t tuple_space_size(const std::vector<Subalgebra>& family) {
    std::uint64_t total = 1;
    for (const Subalgebra& s : family) {
        total *= static_cast<std::uint64_t>(s.atom_count());
        if (total > (std::uint64_t{1} << 62))
            return std::uint64_t{1} << 62;
    }
    return total;
}

/// classOf[i][j][a] = block of intersect(family[i], family[j]) that contains
/// atom a of family[i].
std::vector<std::vector<std::vector<int>>> pair_classes(const std::vector<Subalgebra>& family) {
    size_t n = family.size();
    std::vector<std::vector<std::vector<int>>> classOf(n, std::vector<std::vector<int>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Subalgebra c = intersect(family[i], family[j]);
            auto table = c.block_index_table();
            auto& fwd = classOf[i][j];
            auto& bwd = classOf[j][i];
            fwd.resize(static_cast<size_t>(family[i].atom_count()));
            bwd.resize(static_cast<size_t>(family[j].atom_count()));
            for (int a = 0; a < family[i].atom_count(); ++a)
                fwd[static_cast<size_t>(a)] = table[static_cast<size_t>(family[i].block(a).lowest())];
            for (int b = 0; b < family[j].atom_count(); ++b)
                bwd[static_cast<size_t>(b)] = table[static_cast<size_t>(family[j].block(b).lowest())];
        }
    return classOf;
}

/// Lexicographically least pairwise-compatible atom tuple with empty meet in
/// the subtree rooted at the given first-coordinate atom, or nullopt.
std::optional<std::vector<int>> incompatible_subtree(
    const std::vector<Subalgebra>& family,
    const std::vector<std::vector<std::vector<int>>>& classOf, int first) {
    size_t n = family.size();
    std::vector<int> tuple(n, -1);
    std::vector<Bits> meets(n);
    tuple[0] = first;
    meets[0] = family[0].block(first);
    size_t depth = 1;
    std::vector<int> cursor(n, 0);
    while (true) {
        if (depth == 0)
            return std::nullopt;
        if (depth == n) {
            if (meets[n - 1].empty())
                return tuple;
            --depth;
            if (depth == 0)
                return std::nullopt;
            ++cursor[depth];
        }
        int a = cursor[depth];
        if (a >= family[depth].atom_count()) {
            cursor[depth] = 0;
            --depth;
            if (depth == 0)
                return std::nullopt;
            ++cursor[depth];
            continue;
        }
        bool compatible = true;
        for (size_t j = 0; j < depth; ++j)
            if (classOf[depth][j][static_cast<size_t>(a)] !=
                classOf[j][depth][static_cast<size_t>(tuple[j])]) {
                compatible = false;
                break;
            }
        if (!compatible) {
            ++cursor[depth];
            continue;
        }
        tuple[depth] = a;
        meets[depth] = meets[depth - 1] & family[depth].block(a);
        ++depth;
    }
}

/// Runs per-first-coordinate subtree scans, serially or in parallel chunks;
/// either way the least hit is returned and chunking keeps the early exit.
template <typename Scan>
std::optional<std::vector<int>> scan_first_coordinate(int firstSize, bool parallel, Scan&& scan) {
#ifdef _OPENMP
    if (parallel) {
        int chunk = std::max(4 * omp_get_max_threads(), 8);
        for (int base = 0; base < firstSize; base += chunk) {
            int hi = std::min(firstSize, base + chunk);
            std::vector<std::optional<std::vector<int>>> results(static_cast<size_t>(hi - base));
#pragma omp parallel for schedule(dynamic)
            for (int a = base; a < hi; ++a)
                results[static_cast<size_t>(a - base)] = scan(a);
            for (auto& r : results)
                if (r)
                    return r;
        }
        return std::nullopt;
    }
#else
    (void)parallel;
#endif
    for (int a = 0; a < firstSize; ++a)
        if (auto r = scan(a))
            return r;
    return std::nullopt;
}

std::optional<std::vector<int>> find_incompatible_tuple(const std::vector<Subalgebra>& family,
                                                        Exec exec) {
    auto classOf = pair_classes(family);
    bool parallel = exec == Exec::Parallel ||
                    (exec == Exec::Auto && tuple_space_size(family) >= kParallelThreshold);
    return scan_first_coordinate(family[0].atom_count(), parallel, [&](int a) {
        return incompatible_subtree(family, classOf, a);
    });
}

/// Independent route: enumerate the compatible tuples through the abstract
/// overlap-system encoding and test the mediating map into the ambient
/// powerset atom by atom.
bool commutes_via_pushout(const std::vector<Subalgebra>& family) {
    OverlapSystem sys = embed_as_system(family);
    for (const CompatibleTuple& t : compatible_tuples(sys, Exec::Serial)) {
        Bits meet = Bits::all(family[0].ground());
        for (size_t i = 0; i < family.size(); ++i)
            meet &= family[i].block(t[i]);
        if (meet.empty())
            return false;
    }
    return true;
}

} // namespace

PredicateResult commutes_report(const std::vector<Subalgebra>& family, Exec exec) {
    if (family.size() <= 1)
        return {true, std::nullopt};
    common_ground(family);
    auto bad = find_incompatible_tuple(family, exec);
    PredicateResult result{!bad.has_value(), bad};
    if (tuple_space_size(family) <= kCrossCheckBound) {
        if (commutes_via_pushout(family) != result.value)
            throw internal_error("atom-tuple and pushout-injectivity commutativity tests disagree");
    }
    return result;
}

bool commutes(const std::vector<Subalgebra>& family, Exec exec) {
    return commutes_report(family, exec).value;
}

Subalgebra witness_algebra(const std::vector<Subalgebra>& family, size_t i) {
    Subalgebra d = Subalgebra::trivial(family[i].ground());
    for (size_t j = 0; j < family.size(); ++j)
        if (j != i)
            d = join_subalgebras(d, intersect(family[i], family[j]));
    return d;
}

namespace {

struct WeakContext {
    const std::vector<Subalgebra>& family;
    // proj[i][a] = upper projection of atom a of family[i] into its witness
    // algebra.
    std::vector<std::vector<Bits>> proj;
};

std::optional<std::vector<int>> unwitnessed_subtree(const WeakContext& ctx, int first) {
    const auto& family = ctx.family;
    size_t n = family.size();
    std::vector<int> tuple(n, -1);
    std::vector<Bits> meets(n), projMeets(n);
    tuple[0] = first;
    meets[0] = family[0].block(first);
    projMeets[0] = ctx.proj[0][static_cast<size_t>(first)];
    std::vector<int> cursor(n, 0);
    size_t depth = 1;
    while (true) {
        if (depth == n) {
            if (meets[n - 1].empty() && projMeets[n - 1].any())
                return tuple;
            --depth;
            if (depth == 0)
                return std::nullopt;
            ++cursor[depth];
        }
        int a = cursor[depth];
        if (a >= family[depth].atom_count()) {
            cursor[depth] = 0;
            --depth;
            if (depth == 0)
                return std::nullopt;
            ++cursor[depth];
            continue;
        }
        tuple[depth] = a;
        meets[depth] = meets[depth - 1] & family[depth].block(a);
        projMeets[depth] = projMeets[depth - 1] & ctx.proj[depth][static_cast<size_t>(a)];
        ++depth;
        // Tuples whose projection meet already died can never be
        // counterexamples, but their extensions must still be scanned only if
        // the projection meet could recover -- it cannot, meets only shrink.
        if (projMeets[depth - 1].empty()) {
            --depth;
            ++cursor[depth];
        }
    }
}

} // namespace

PredicateResult weakly_commutes_report(const std::vector<Subalgebra>& family, Exec exec) {
    if (family.size() <= 1)
        return {true, std::nullopt};
    common_ground(family);
    WeakContext ctx{family, {}};
    ctx.proj.resize(family.size());
    for (size_t i = 0; i < family.size(); ++i) {
        Subalgebra d = witness_algebra(family, i);
        ctx.proj[i].resize(static_cast<size_t>(family[i].atom_count()));
        for (int a = 0; a < family[i].atom_count(); ++a)
            ctx.proj[i][static_cast<size_t>(a)] =
                upper_projection(d, Element(d.ground(), family[i].block(a))).bits;
    }
    bool parallel = exec == Exec::Parallel ||
                    (exec == Exec::Auto && tuple_space_size(family) >= kParallelThreshold);
    std::optional<std::vector<int>> bad = scan_first_coordinate(
        family[0].atom_count(), parallel, [&](int a) { return unwitnessed_subtree(ctx, a); });
    return {!bad.has_value(), bad};
}

bool weakly_commutes(const std::vector<Subalgebra>& family, Exec exec) {
    return weakly_commutes_report(family, exec).value;
}

std::optional<WitnessTuple> weak_witness(const std::vector<Subalgebra>& family,
                                         const ElementFamily& x) {
    if (family.size() != x.size())
        throw schema_error("one query element per subalgebra is required");
    int m = common_ground(family);
    Bits meet = Bits::all(m);
    for (size_t i = 0; i < family.size(); ++i) {
        if (x[i].ground != m)
            throw ground_mismatch("query element ground differs from family ground");
        if (!family[i].is_member(x[i]))
            throw schema_error("query element " + std::to_string(i) +
                               " is not a member of its subalgebra");
        meet &= x[i].bits;
    }
    if (meet.any())
        throw schema_error("query tuple has nonzero meet; weak witnesses exist only for "
                           "incompatible tuples");
    WitnessTuple w;
    Bits wmeet = Bits::all(m);
    for (size_t i = 0; i < family.size(); ++i) {
        Element y = upper_projection(witness_algebra(family, i), x[i]);
        wmeet &= y.bits;
        w.elements.push_back(y);
    }
    // Any witness dominates the tuple of upper projections, so one meet test
    // decides existence.
    if (wmeet.any())
        return std::nullopt;
    return w;
}

bool commutes_over(const Subalgebra& a, const Subalgebra& b, const Subalgebra& c) {
    if (a.ground() != b.ground() || a.ground() != c.ground())
        throw ground_mismatch("subalgebra grounds differ");
    for (const Bits& x : a.blocks()) {
        Bits sep = upper_projection(c, Element(c.ground(), x)).bits;
        for (const Bits& y : b.blocks())
            if (!x.intersects(y) && sep.intersects(y))
                return false;
    }
    return true;
}

namespace {

std::vector<Subalgebra> dedupe(const std::vector<Subalgebra>& family) {
    std::vector<Subalgebra> out;
    for (const Subalgebra& s : family)
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    return out;
}

WellReport well_driver(const std::vector<Subalgebra>& family, std::optional<int> maxArity,
                       Exec exec, bool weak) {
    if (family.empty())
        return {};
    common_ground(family);
    std::vector<Subalgebra> set = dedupe(family);
    int k = static_cast<int>(set.size());
    int cap = std::min(k, maxArity.value_or(k));
    // Subsets by size, then lexicographically, so the reported counterexample
    // is deterministic.
    std::vector<int> pick;
    for (int size = 2; size <= cap; ++size) {
        pick.assign(static_cast<size_t>(size), 0);
        for (int i = 0; i < size; ++i)
            pick[static_cast<size_t>(i)] = i;
        while (true) {
            std::vector<Subalgebra> sub;
            for (int idx : pick)
                sub.push_back(set[static_cast<size_t>(idx)]);
            PredicateResult r =
                weak ? weakly_commutes_report(sub, exec) : commutes_report(sub, exec);
            if (!r.value)
                return {false, pick, *r.counterexample};
            int pos = size - 1;
            while (pos >= 0 && pick[static_cast<size_t>(pos)] == k - size + pos)
                --pos;
            if (pos < 0)
                break;
            ++pick[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < size; ++i)
                pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
        }
    }
    return {};
}

} // namespace

WellReport commutes_well(const std::vector<Subalgebra>& family, std::optional<int> maxArity,
                         Exec exec) {
    return well_driver(family, maxArity, exec, false);
}

WellReport weakly_commutes_well(const std::vector<Subalgebra>& family, std::optional<int> maxArity,
                                Exec exec) {
    return well_driver(family, maxArity, exec, true);
}

bool overlap_coherent(const std::vector<Subalgebra>& prefix, const Subalgebra& last) {
    Subalgebra joined = join_subalgebras(prefix);
    Subalgebra lhs = intersect(last, joined);
    Subalgebra rhs = Subalgebra::trivial(last.ground());
    for (const Subalgebra& s : prefix)
        rhs = join_subalgebras(rhs, intersect(last, s));
    return lhs == rhs;
}

bool join_pair_commutes(const std::vector<Subalgebra>& prefix, const Subalgebra& last) {
    return commutes({join_subalgebras(prefix), last});
}

} // namespace boolalg
