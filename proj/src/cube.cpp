#include "boolalg/cube.hpp"

#include <algorithm>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boolalg {

void FinMap::validate() const {
    if (static_cast<int>(table.size()) != domain)
        throw schema_error("map table length differs from its domain size");
    for (int v : table)
        if (v < 0 || v >= codomain)
            throw schema_error("map value outside its codomain");
}

FinMap compose(const FinMap& first, const FinMap& then) {
    if (first.codomain != then.domain)
        throw schema_error("maps do not compose");
    FinMap r{first.domain, then.codomain, {}};
    r.table.reserve(first.table.size());
    for (int v : first.table)
        r.table.push_back(then.table[static_cast<size_t>(v)]);
    return r;
}

FinMap identity_map(int size) {
    FinMap r{size, size, {}};
    r.table.resize(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i)
        r.table[static_cast<size_t>(i)] = i;
    return r;
}

FinCube::FinCube(int n, std::vector<int> sizes) : n_(n), sizes_(std::move(sizes)) {
    if (n_ < 1 || n_ > 8)
        throw schema_error("cube dimension must be in [1,8]");
    if (static_cast<int>(sizes_.size()) != subsets())
        throw schema_error("a cube needs one set per subset of its coordinates");
    for (int sz : sizes_)
        if (sz < 0 || sz > size_cap())
            throw size_overflow("cube corner size outside [0, size cap]");
    maps_.resize(static_cast<size_t>(subsets()) * static_cast<size_t>(subsets()));
    for (int s = 0; s < subsets(); ++s)
        set_map(s, s, identity_map(size(s)));
}

const FinMap& FinCube::map(int s, int t) const {
    if ((s & t) != s)
        throw schema_error("cube map requested for a non-inclusion");
    const FinMap& f = maps_[static_cast<size_t>(s) * static_cast<size_t>(subsets()) +
                            static_cast<size_t>(t)];
    if (f.domain != size(s) || f.codomain != size(t))
        throw schema_error("cube map missing for an inclusion");
    return f;
}

void FinCube::set_map(int s, int t, FinMap f) {
    if ((s & t) != s)
        throw schema_error("cube map assigned to a non-inclusion");
    if (f.domain != size(s) || f.codomain != size(t))
        throw schema_error("cube map has the wrong signature");
    f.validate();
    maps_[static_cast<size_t>(s) * static_cast<size_t>(subsets()) + static_cast<size_t>(t)] =
        std::move(f);
}

bool FinCube::is_functorial(std::string* why) const {
    for (int s = 0; s < subsets(); ++s)
        for (int t = s; t < subsets(); ++t) {
            if ((s & t) != s)
                continue;
            const FinMap& f = maps_[static_cast<size_t>(s) * static_cast<size_t>(subsets()) +
                                    static_cast<size_t>(t)];
            if (f.domain != size(s) || f.codomain != size(t)) {
                if (why)
                    *why = "missing map for an inclusion";
                return false;
            }
            for (int u = t; u < subsets(); ++u) {
                if ((t & u) != t)
                    continue;
                FinMap two = compose(map(s, t), map(t, u));
                if (two.table != map(s, u).table) {
                    if (why)
                        *why = "composition law fails on a chain of inclusions";
                    return false;
                }
            }
        }
    return true;
}

void FinCube::require_functorial() const {
    std::string why;
    if (!is_functorial(&why))
        throw schema_error("cube is not functorial: " + why);
}

FinCube projection_cube(const std::vector<std::vector<int>>& indexSets) {
    int n = static_cast<int>(indexSets.size());
    if (n < 1)
        throw schema_error("projection cube needs at least one index set");
    std::vector<std::vector<int>> coords(static_cast<size_t>(1) << n);
    for (int s = 0; s < (1 << n); ++s) {
        std::vector<int> b;
        if (s == 0) {
            for (const auto& a : indexSets)
                b.insert(b.end(), a.begin(), a.end());
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
        } else {
            bool started = false;
            for (int i = 0; i < n; ++i) {
                if (!((s >> i) & 1))
                    continue;
                std::vector<int> a = indexSets[static_cast<size_t>(i)];
                std::sort(a.begin(), a.end());
                a.erase(std::unique(a.begin(), a.end()), a.end());
                if (!started) {
                    b = a;
                    started = true;
                } else {
                    std::vector<int> inter;
                    std::set_intersection(b.begin(), b.end(), a.begin(), a.end(),
                                          std::back_inserter(inter));
                    b = std::move(inter);
                }
            }
        }
        if (static_cast<int>(b.size()) > 20)
            throw size_overflow("projection cube corner over more than 20 coordinates");
        coords[static_cast<size_t>(s)] = std::move(b);
    }
    std::vector<int> sizes;
    for (auto& b : coords)
        sizes.push_back(1 << b.size());
    FinCube cube(n, sizes);
    for (int s = 0; s < (1 << n); ++s)
        for (int t = s; t < (1 << n); ++t) {
            if ((s & t) != s || s == t)
                continue;
            const auto& bs = coords[static_cast<size_t>(s)];
            const auto& bt = coords[static_cast<size_t>(t)];
            // b(t) ⊆ b(s); restrict the characteristic function.
            std::vector<int> positions;
            for (int c : bt) {
                auto it = std::lower_bound(bs.begin(), bs.end(), c);
                if (it == bs.end() || *it != c)
                    throw internal_error("projection cube coordinates are not nested");
                positions.push_back(static_cast<int>(it - bs.begin()));
            }
            FinMap f{cube.size(s), cube.size(t), {}};
            f.table.resize(static_cast<size_t>(cube.size(s)));
            for (int x = 0; x < cube.size(s); ++x) {
                int y = 0;
                for (size_t k = 0; k < positions.size(); ++k)
                    if ((x >> positions[k]) & 1)
                        y |= 1 << k;
                f.table[static_cast<size_t>(x)] = y;
            }
            cube.set_map(s, t, std::move(f));
        }
    return cube;
}

namespace {

struct TupleHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 146527;
        for (int x : v)
            h = h * 1000003u + static_cast<size_t>(x) + 0x9e3779b9u;
        return h;
    }
};

using TupleSet = std::unordered_set<std::vector<int>, TupleHash>;

/// Least compatible corner tuple in the subtree with fixed first coordinate
/// that is missing from the achieved set.
std::optional<std::vector<int>> unachieved_subtree(const FinCube& cube, const TupleSet& achieved,
                                                   int first) {
    int n = cube.dim();
    std::vector<int> tuple(static_cast<size_t>(n), -1);
    tuple[0] = first;
    if (n == 1) {
        if (!achieved.count(tuple))
            return tuple;
        return std::nullopt;
    }
    std::vector<int> cursor(static_cast<size_t>(n), 0);
    int depth = 1;
    while (true) {
        int a = cursor[static_cast<size_t>(depth)];
        if (a >= cube.size(1 << depth)) {
            cursor[static_cast<size_t>(depth)] = 0;
            --depth;
            if (depth == 0)
                return std::nullopt;
            ++cursor[static_cast<size_t>(depth)];
            continue;
        }
        bool compatible = true;
        for (int j = 0; j < depth && compatible; ++j) {
            int pairFace = (1 << depth) | (1 << j);
            if (cube.map(1 << depth, pairFace)(a) !=
                cube.map(1 << j, pairFace)(tuple[static_cast<size_t>(j)]))
                compatible = false;
        }
        if (!compatible) {
            ++cursor[static_cast<size_t>(depth)];
            continue;
        }
        tuple[static_cast<size_t>(depth)] = a;
        if (depth + 1 == n) {
            if (!achieved.count(tuple))
                return tuple;
            ++cursor[static_cast<size_t>(depth)];
        } else {
            ++depth;
        }
    }
}

} // namespace

CommutativityReport n_commutativity_report(const FinCube& cube, Exec exec) {
    cube.require_functorial();
    int n = cube.dim();
    TupleSet achieved;
    achieved.reserve(static_cast<size_t>(cube.size(0)));
    std::vector<const FinMap*> toCorner;
    for (int i = 0; i < n; ++i)
        toCorner.push_back(&cube.map(0, 1 << i));
    for (int q = 0; q < cube.size(0); ++q) {
        std::vector<int> t(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            t[static_cast<size_t>(i)] = (*toCorner[static_cast<size_t>(i)])(q);
        achieved.insert(std::move(t));
    }
    int firstSize = cube.size(1);
    bool parallel = exec == Exec::Parallel || (exec == Exec::Auto && firstSize >= 64);
    std::optional<std::vector<int>> missing;
#ifdef _OPENMP
    if (parallel) {
        int chunk = std::max(4 * omp_get_max_threads(), 8);
        for (int base = 0; base < firstSize && !missing; base += chunk) {
            int hi = std::min(firstSize, base + chunk);
            std::vector<std::optional<std::vector<int>>> results(static_cast<size_t>(hi - base));
#pragma omp parallel for schedule(dynamic)
            for (int a = base; a < hi; ++a)
                results[static_cast<size_t>(a - base)] = unachieved_subtree(cube, achieved, a);
            for (auto& r : results)
                if (r) {
                    missing = r;
                    break;
                }
        }
        return {!missing.has_value(), missing};
    }
#else
    (void)parallel;
#endif
    for (int a = 0; a < firstSize && !missing; ++a)
        missing = unachieved_subtree(cube, achieved, a);
    return {!missing.has_value(), missing};
}

bool is_n_commutative(const FinCube& cube, Exec exec) {
    return n_commutativity_report(cube, exec).value;
}

FinCube cube_from_family(const std::vector<Subalgebra>& family) {
    int n = static_cast<int>(family.size());
    int m = common_ground(family);
    std::vector<Subalgebra> corner(static_cast<size_t>(1) << n, Subalgebra::discrete(m));
    for (int s = 1; s < (1 << n); ++s) {
        std::vector<Subalgebra> part;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1)
                part.push_back(family[static_cast<size_t>(i)]);
        corner[static_cast<size_t>(s)] = intersect(part);
    }
    std::vector<int> sizes;
    for (auto& c : corner)
        sizes.push_back(c.atom_count());
    FinCube cube(n, sizes);
    for (int s = 0; s < (1 << n); ++s)
        for (int t = s; t < (1 << n); ++t) {
            if ((s & t) != s || s == t)
                continue;
            // Each block of the finer partition sits inside one block of the
            // coarser.
            auto coarse = corner[static_cast<size_t>(t)].block_index_table();
            FinMap f{cube.size(s), cube.size(t), {}};
            for (int b = 0; b < corner[static_cast<size_t>(s)].atom_count(); ++b)
                f.table.push_back(
                    coarse[static_cast<size_t>(corner[static_cast<size_t>(s)].block(b).lowest())]);
            cube.set_map(s, t, std::move(f));
        }
    return cube;
}

FinCube group_cube(const FinCube& cube, const std::vector<std::vector<int>>& covering) {
    cube.require_functorial();
    int m = static_cast<int>(covering.size());
    int n = cube.dim();
    std::vector<int> unions(static_cast<size_t>(1) << m, 0);
    for (int s = 0; s < (1 << m); ++s)
        for (int i = 0; i < m; ++i)
            if ((s >> i) & 1)
                for (int k : covering[static_cast<size_t>(i)]) {
                    if (k < 0 || k >= n)
                        throw schema_error("covering names a coordinate outside the cube");
                    unions[static_cast<size_t>(s)] |= 1 << k;
                }
    if (unions[(size_t{1} << m) - 1] != (1 << n) - 1)
        throw schema_error("the groups do not cover the cube's coordinates");
    std::vector<int> sizes;
    for (int s = 0; s < (1 << m); ++s)
        sizes.push_back(cube.size(unions[static_cast<size_t>(s)]));
    FinCube out(m, sizes);
    for (int s = 0; s < (1 << m); ++s)
        for (int t = s; t < (1 << m); ++t) {
            if ((s & t) != s || s == t)
                continue;
            out.set_map(s, t, cube.map(unions[static_cast<size_t>(s)], unions[static_cast<size_t>(t)]));
        }
    return out;
}

namespace {

FinCube face(const FinCube& cube, bool withLast) {
    cube.require_functorial();
    int n = cube.dim();
    if (n < 2)
        throw schema_error("cube faces need dimension at least 2");
    int top = 1 << (n - 1);
    auto lift = [&](int s) { return withLast ? (s | top) : s; };
    std::vector<int> sizes;
    for (int s = 0; s < top; ++s)
        sizes.push_back(cube.size(lift(s)));
    FinCube out(n - 1, sizes);
    for (int s = 0; s < top; ++s)
        for (int t = s; t < top; ++t) {
            if ((s & t) != s || s == t)
                continue;
            out.set_map(s, t, cube.map(lift(s), lift(t)));
        }
    return out;
}

} // namespace

FinCube lower_face(const FinCube& cube) { return face(cube, false); }
FinCube upper_face(const FinCube& cube) { return face(cube, true); }

} // namespace boolalg
