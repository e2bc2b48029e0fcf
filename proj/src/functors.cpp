#include "boolalg/functors.hpp"

#include "boolalg/commute.hpp"
#include "boolalg/cube.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boolalg {

FunctorId FunctorId::sp(int k) {
    if (k < 2)
        throw schema_error("symmetric powers need multiset size at least 2");
    return {Kind::SP, k};
}

std::string FunctorId::name() const {
    return is_exp() ? "exp" : ("sp" + std::to_string(k));
}

std::optional<FunctorId> parse_functor(const std::string& text) {
    std::string t;
    for (char c : text)
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "exp")
        return FunctorId::exp();
    if (t.size() > 2 && t.rfind("sp", 0) == 0) {
        int k = 0;
        for (size_t i = 2; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return std::nullopt;
            k = k * 10 + (t[i] - '0');
        }
        if (k >= 2)
            return FunctorId::sp(k);
    }
    return std::nullopt;
}

namespace {

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::int64_t functor_space_size(FunctorId f, int m) {
    if (f.is_exp()) {
        if (m >= 62)
            return std::int64_t{1} << 62;
        return (std::int64_t{1} << m) - 1;
    }
    return binomial(m + f.k - 1, f.k);
}

std::vector<std::vector<int>> multisets(int m, int k) {
    std::vector<std::vector<int>> out;
    if (m == 0)
        return out;
    std::vector<int> t(static_cast<size_t>(k), 0);
    while (true) {
        out.push_back(t);
        int pos = k - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] == m - 1)
            --pos;
        if (pos < 0)
            break;
        int v = t[static_cast<size_t>(pos)] + 1;
        for (int i = pos; i < k; ++i)
            t[static_cast<size_t>(i)] = v;
    }
    return out;
}

namespace {

FinMap exp_map(const FinMap& f) {
    std::int64_t dsize = functor_space_size(FunctorId::exp(), f.domain);
    std::int64_t csize = functor_space_size(FunctorId::exp(), f.codomain);
    if (dsize > size_cap() || csize > size_cap())
        throw size_overflow("hyperspace image exceeds the size cap");
    FinMap r{static_cast<int>(dsize), static_cast<int>(csize), {}};
    r.table.resize(static_cast<size_t>(dsize));
    for (std::int64_t mask = 1; mask <= dsize; ++mask) {
        std::int64_t image = 0;
        for (int p = 0; p < f.domain; ++p)
            if ((mask >> p) & 1)
                image |= std::int64_t{1} << f(p);
        r.table[static_cast<size_t>(mask - 1)] = static_cast<int>(image - 1);
    }
    return r;
}

struct MultisetIndex {
    std::vector<std::vector<int>> list;
    std::map<std::vector<int>, int> rank;

    static MultisetIndex make(int m, int k) {
        MultisetIndex idx;
        idx.list = multisets(m, k);
        for (size_t i = 0; i < idx.list.size(); ++i)
            idx.rank[idx.list[i]] = static_cast<int>(i);
        return idx;
    }
};

FinMap sp_map(const FinMap& f, int k, const MultisetIndex& dom, const MultisetIndex& cod) {
    FinMap r{static_cast<int>(dom.list.size()), static_cast<int>(cod.list.size()), {}};
    r.table.reserve(dom.list.size());
    for (const auto& t : dom.list) {
        std::vector<int> image;
        image.reserve(static_cast<size_t>(k));
        for (int x : t)
            image.push_back(f(x));
        std::sort(image.begin(), image.end());
        r.table.push_back(cod.rank.at(image));
    }
    return r;
}

} // namespace

FinCube apply_functor(FunctorId f, const FinCube& cube) {
    cube.require_functorial();
    int subsets = cube.subsets();
    std::vector<int> sizes(static_cast<size_t>(subsets));
    std::vector<MultisetIndex> msets;
    if (!f.is_exp())
        msets.resize(static_cast<size_t>(subsets));
    for (int s = 0; s < subsets; ++s) {
        std::int64_t sz = functor_space_size(f, cube.size(s));
        if (sz > size_cap())
            throw size_overflow("functor image of a cube corner exceeds the size cap");
        sizes[static_cast<size_t>(s)] = static_cast<int>(sz);
        if (!f.is_exp())
            msets[static_cast<size_t>(s)] = MultisetIndex::make(cube.size(s), f.k);
    }
    FinCube out(cube.dim(), sizes);
    for (int s = 0; s < subsets; ++s)
        for (int t = s; t < subsets; ++t) {
            if ((s & t) != s || s == t)
                continue;
            const FinMap& base = cube.map(s, t);
            out.set_map(s, t,
                        f.is_exp() ? exp_map(base)
                                   : sp_map(base, f.k, msets[static_cast<size_t>(s)],
                                            msets[static_cast<size_t>(t)]));
        }
    out.require_functorial();
    return out;
}

Subalgebra functor_image(FunctorId f, const Subalgebra& a) {
    int m = a.ground();
    std::int64_t newGround = functor_space_size(f, m);
    if (newGround > kMaxGround)
        throw size_overflow("functor ground of " + std::to_string(newGround) +
                            " points exceeds the dense-representation cap");
    auto blockOf = a.block_index_table();
    if (f.is_exp()) {
        // Points are nonempty subsets (bitmask order); two are grouped iff
        // they meet exactly the same set of blocks.
        std::map<std::uint64_t, Bits> groups;
        for (std::int64_t mask = 1; mask <= newGround; ++mask) {
            std::uint64_t key = 0;
            for (int p = 0; p < m; ++p)
                if ((mask >> p) & 1)
                    key |= std::uint64_t{1} << blockOf[static_cast<size_t>(p)];
            groups[key].set(static_cast<int>(mask - 1));
        }
        std::vector<Bits> blocks;
        for (auto& [key, bits] : groups)
            blocks.push_back(bits);
        return Subalgebra::from_blocks(static_cast<int>(newGround), std::move(blocks));
    }
    // Points are size-k multisets; two are grouped iff they induce the same
    // multiset of blocks.
    auto list = multisets(m, f.k);
    std::map<std::vector<int>, Bits> groups;
    for (size_t i = 0; i < list.size(); ++i) {
        std::vector<int> key;
        key.reserve(static_cast<size_t>(f.k));
        for (int p : list[i])
            key.push_back(blockOf[static_cast<size_t>(p)]);
        std::sort(key.begin(), key.end());
        groups[key].set(static_cast<int>(i));
    }
    std::vector<Bits> blocks;
    for (auto& [key, bits] : groups)
        blocks.push_back(bits);
    return Subalgebra::from_blocks(static_cast<int>(newGround), std::move(blocks));
}

Subalgebra functor_image_oracle(FunctorId f, const Subalgebra& a) {
    int m = a.ground();
    std::int64_t newGround = functor_space_size(f, m);
    if (newGround > kMaxGround)
        throw size_overflow("functor ground exceeds the dense-representation cap");
    if (f.is_exp()) {
        // Generated by the principal-filter sets [x] = {S nonempty : S <= x}
        // over all members x.
        std::vector<Bits> gens;
        for (const Bits& member : a.members(16)) {
            Bits g;
            for (std::int64_t mask = 1; mask <= newGround; ++mask) {
                bool inside = true;
                for (int p = 0; p < m && inside; ++p)
                    if (((mask >> p) & 1) && !member.test(p))
                        inside = false;
                if (inside)
                    g.set(static_cast<int>(mask - 1));
            }
            gens.push_back(g);
        }
        return generate_subalgebra(static_cast<int>(newGround), gens);
    }
    // Symmetric copower: inside the k-fold free product (the powerset of
    // ordered point tuples), generate the embedded product of A, then take
    // the subalgebra fixed by coordinate permutations.  Its atoms are orbit
    // unions of the product's atoms, which project to multisets.
    int k = f.k;
    std::int64_t tupleCount = 1;
    for (int i = 0; i < k; ++i)
        tupleCount *= m;
    if (tupleCount > kMaxGround)
        throw size_overflow("ordered tuple space exceeds the dense-representation cap");
    std::vector<std::vector<int>> tuples;
    std::vector<int> t(static_cast<size_t>(k), 0);
    while (true) {
        tuples.push_back(t);
        int pos = k - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] == m - 1) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++t[static_cast<size_t>(pos)];
    }
    std::map<std::vector<int>, int> tupleRank;
    for (size_t i = 0; i < tuples.size(); ++i)
        tupleRank[tuples[i]] = static_cast<int>(i);
    std::vector<Bits> gens;
    for (const Bits& member : a.members(16))
        for (int coord = 0; coord < k; ++coord) {
            Bits g;
            for (size_t i = 0; i < tuples.size(); ++i)
                if (member.test(tuples[i][static_cast<size_t>(coord)]))
                    g.set(static_cast<int>(i));
            gens.push_back(g);
        }
    Subalgebra product = generate_subalgebra(static_cast<int>(tuples.size()), gens);
    // Orbits of the product's atoms under the permutation action.
    std::vector<int> permOrbit(static_cast<size_t>(product.atom_count()));
    std::iota(permOrbit.begin(), permOrbit.end(), 0);
    auto find = [&](int x) {
        while (permOrbit[static_cast<size_t>(x)] != x)
            x = permOrbit[static_cast<size_t>(x)] = permOrbit[static_cast<size_t>(permOrbit[static_cast<size_t>(x)])];
        return x;
    };
    auto blockOfTuple = product.block_index_table();
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (size_t i = 0; i < tuples.size(); ++i) {
            std::vector<int> image(static_cast<size_t>(k));
            for (int c = 0; c < k; ++c)
                image[static_cast<size_t>(c)] = tuples[i][static_cast<size_t>(perm[static_cast<size_t>(c)])];
            int other = tupleRank.at(image);
            int ra = find(blockOfTuple[i]);
            int rb = find(blockOfTuple[static_cast<size_t>(other)]);
            if (ra != rb)
                permOrbit[static_cast<size_t>(ra)] = rb;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    // Project orbit unions down to the multiset ground.
    auto list = multisets(m, k);
    std::map<int, Bits> groups;
    for (size_t i = 0; i < list.size(); ++i) {
        int orbit = find(blockOfTuple[static_cast<size_t>(tupleRank.at(list[i]))]);
        groups[orbit].set(static_cast<int>(i));
    }
    std::vector<Bits> blocks;
    for (auto& [key, bits] : groups)
        blocks.push_back(bits);
    return Subalgebra::from_blocks(static_cast<int>(newGround), std::move(blocks));
}

namespace {

/// All partitions of {0,...,m-1} in restricted-growth-string order.
std::vector<Subalgebra> partitions_in_rgs_order(int m) {
    std::vector<Subalgebra> out;
    std::vector<int> rgs(static_cast<size_t>(m), 0);
    while (true) {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<Bits> bl(static_cast<size_t>(blocks));
        for (int p = 0; p < m; ++p)
            bl[static_cast<size_t>(rgs[static_cast<size_t>(p)])].set(p);
        out.push_back(Subalgebra::from_blocks(m, std::move(bl)));
        // Next restricted growth string.
        int pos = m - 1;
        while (pos > 0) {
            int maxPrefix = 0;
            for (int q = 0; q < pos; ++q)
                maxPrefix = std::max(maxPrefix, rgs[static_cast<size_t>(q)]);
            if (rgs[static_cast<size_t>(pos)] <= maxPrefix) {
                ++rgs[static_cast<size_t>(pos)];
                std::fill(rgs.begin() + pos + 1, rgs.end(), 0);
                break;
            }
            --pos;
        }
        if (pos == 0)
            break;
    }
    return out;
}

/// Independent recheck of a commutativity counterexample: the atom tuple is
/// pairwise compatible (each pair lies inside one block of the pairwise
/// intersection) and its meet is empty.
bool confirm_incompatible(const std::vector<Subalgebra>& family, const std::vector<int>& tuple) {
    int ground = family[0].ground();
    Bits meet = Bits::all(ground);
    for (size_t i = 0; i < family.size(); ++i) {
        meet &= family[i].block(tuple[i]);
        for (size_t j = i + 1; j < family.size(); ++j) {
            Subalgebra c = intersect(family[i], family[j]);
            Element sat = upper_projection(c, Element(ground, family[i].block(tuple[i])));
            if (!family[j].block(tuple[j]).subset_of(sat.bits))
                return false;
        }
    }
    return meet.empty();
}

} // namespace

AlgebraSearchResult search_algebra_counterexample(FunctorId f, int m, Exec exec) {
    if (m < 1 || m > 6)
        throw schema_error("algebra search is capped at ground size 6");
    AlgebraSearchResult res;
    if (functor_space_size(f, m) > kMaxGround) {
        res.transcript.push_back("functor ground exceeds the dense-representation cap; nothing searched");
        return res;
    }
    std::vector<Subalgebra> parts = partitions_in_rgs_order(m);
    int np = static_cast<int>(parts.size());
    std::vector<Subalgebra> images(static_cast<size_t>(np));
    for (int i = 0; i < np; ++i)
        images[static_cast<size_t>(i)] = functor_image(f, parts[static_cast<size_t>(i)]);
    res.transcript.push_back("searching " + std::to_string(np) + " partitions of a " +
                             std::to_string(m) + "-point ground for functor " + f.name());

    struct Hit {
        int i1, i2;
        std::vector<int> tuple;
    };
    for (int i0 = 0; i0 < np; ++i0) {
        std::vector<std::pair<int, int>> candidates;
        for (int i1 = i0; i1 < np; ++i1)
            for (int i2 = i1; i2 < np; ++i2)
                candidates.emplace_back(i1, i2);
        std::vector<std::optional<Hit>> hits(candidates.size());
        bool parallel = exec != Exec::Serial;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (size_t c = 0; c < candidates.size(); ++c) {
            auto [i1, i2] = candidates[c];
            std::vector<Subalgebra> triple{parts[static_cast<size_t>(i0)],
                                           parts[static_cast<size_t>(i1)],
                                           parts[static_cast<size_t>(i2)]};
            if (!commutes(triple, Exec::Serial))
                continue;
            std::vector<Subalgebra> img{images[static_cast<size_t>(i0)],
                                        images[static_cast<size_t>(i1)],
                                        images[static_cast<size_t>(i2)]};
            PredicateResult comm = commutes_report(img, Exec::Serial);
            if (!comm.value)
                hits[c] = Hit{i1, i2, *comm.counterexample};
        }
        for (size_t c = 0; c < candidates.size(); ++c) {
            if (!hits[c])
                continue;
            auto [i1, i2] = candidates[c];
            res.found = true;
            res.triple = {parts[static_cast<size_t>(i0)], parts[static_cast<size_t>(i1)],
                          parts[static_cast<size_t>(i2)]};
            res.failingTuple = hits[c]->tuple;
            std::vector<Subalgebra> img{images[static_cast<size_t>(i0)],
                                        images[static_cast<size_t>(i1)],
                                        images[static_cast<size_t>(i2)]};
            // Independent confirmation of both halves: the base triple
            // through the Stone-dual cube route, the image tuple directly.
            std::vector<Subalgebra> base{res.triple.begin(), res.triple.end()};
            if (!is_n_commutative(cube_from_family(base)))
                throw internal_error("search hit a triple that fails its dual-cube recheck");
            if (is_n_commutative(cube_from_family(img)))
                throw internal_error("search hit an image family that passes its dual-cube recheck");
            if (!confirm_incompatible(img, res.failingTuple))
                throw internal_error("search hit an image tuple that fails its meet recheck");
            res.transcript.push_back(
                "triple commutes; the image atom tuple (" + std::to_string(res.failingTuple[0]) +
                "," + std::to_string(res.failingTuple[1]) + "," +
                std::to_string(res.failingTuple[2]) +
                ") is pairwise compatible with empty meet, so the images do not commute "
                "(confirmed through the dual-cube route)");
            if (!weakly_commutes(img))
                res.transcript.push_back(
                    "the image triple even fails weak commutativity at this ground size");
            return res;
        }
    }
    res.transcript.push_back("search space exhausted without a witness");
    return res;
}

CubeSearchResult search_cube_counterexample(FunctorId f, int universe, Exec exec) {
    if (universe < 1 || universe > 6)
        throw schema_error("cube search is capped at a 6-point universe");
    CubeSearchResult res;
    int maskLimit = 1 << universe;
    int cap = std::min(size_cap(), 4096);
    long skipped = 0;

    auto setsOf = [&](int mask) {
        std::vector<int> s;
        for (int p = 0; p < universe; ++p)
            if ((mask >> p) & 1)
                s.push_back(p);
        return s;
    };

    struct Hit {
        int m1, m2;
        std::vector<int> tuple;
    };
    for (int m0 = 0; m0 < maskLimit; ++m0) {
        std::vector<std::pair<int, int>> candidates;
        for (int m1 = 0; m1 < maskLimit; ++m1)
            for (int m2 = 0; m2 < maskLimit; ++m2)
                candidates.emplace_back(m1, m2);
        std::vector<std::optional<Hit>> hits(candidates.size());
        std::vector<char> skippedHere(candidates.size(), 0);
        bool parallel = exec != Exec::Serial;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (size_t c = 0; c < candidates.size(); ++c) {
            auto [m1, m2] = candidates[c];
            std::vector<std::vector<int>> sets{setsOf(m0), setsOf(m1), setsOf(m2)};
            FinCube base = projection_cube(sets);
            bool tooBig = false;
            for (int s = 0; s < base.subsets(); ++s)
                if (functor_space_size(f, base.size(s)) > cap)
                    tooBig = true;
            if (tooBig) {
                skippedHere[c] = 1;
                continue;
            }
            if (!is_n_commutative(base, Exec::Serial))
                continue;
            FinCube img = apply_functor(f, base);
            CommutativityReport rep = n_commutativity_report(img, Exec::Serial);
            if (!rep.value)
                hits[c] = Hit{m1, m2, *rep.counterexample};
        }
        for (char s : skippedHere)
            skipped += s;
        for (size_t c = 0; c < candidates.size(); ++c) {
            if (!hits[c])
                continue;
            auto [m1, m2] = candidates[c];
            res.found = true;
            res.indexSets = {setsOf(m0), setsOf(m1), setsOf(m2)};
            res.failingTuple = hits[c]->tuple;

            // Re-verify the certificate directly: the tuple is pairwise
            // compatible in the functored cube and no initial-corner point
            // reaches it.
            FinCube base = projection_cube(res.indexSets);
            FinCube img = apply_functor(f, base);
            const std::vector<int>& tup = res.failingTuple;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int face = (1 << i) | (1 << j);
                    if (img.map(1 << i, face)(tup[static_cast<size_t>(i)]) !=
                        img.map(1 << j, face)(tup[static_cast<size_t>(j)]))
                        throw internal_error("cube search certificate is not compatible");
                }
            for (int q = 0; q < img.size(0); ++q) {
                bool lifts = true;
                for (int i = 0; i < 3 && lifts; ++i)
                    if (img.map(0, 1 << i)(q) != tup[static_cast<size_t>(i)])
                        lifts = false;
                if (lifts)
                    throw internal_error("cube search certificate lifts after all");
            }
            bool disjoint = true;
            for (int i = 0; i < 3 && disjoint; ++i)
                for (int j = i + 1; j < 3 && disjoint; ++j)
                    for (int p : res.indexSets[static_cast<size_t>(i)])
                        if (std::count(res.indexSets[static_cast<size_t>(j)].begin(),
                                       res.indexSets[static_cast<size_t>(j)].end(), p)) {
                            disjoint = false;
                            break;
                        }
            if (disjoint)
                throw internal_error("constraint-free index sets produced a counterexample");
            if (skipped > 0)
                res.transcript.push_back(std::to_string(skipped) +
                                         " candidates skipped by the size cap before this hit");
            res.transcript.push_back(
                "projection cube is 3-commutative; its " + f.name() +
                " image has a pairwise-compatible corner tuple with no lift (re-verified by "
                "direct scan)");
            return res;
        }
    }
    res.transcript.push_back("search space exhausted without a witness (" +
                             std::to_string(skipped) + " candidates over the size cap skipped)");
    return res;
}

} // namespace boolalg
