#include "boolalg/core.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <numeric>

namespace boolalg {

int size_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("BOOLALG_SIZE_CAP")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0)
                return static_cast<int>(v);
        }
        return 1 << 20;
    }();
    return cap;
}

Bits Bits::all(int ground) {
    if (ground < 0 || ground > kMaxGround)
        throw size_overflow("ground size " + std::to_string(ground) + " exceeds bitset capacity " +
                            std::to_string(kMaxGround));
    Bits b;
    for (int i = 0; i < kWords; ++i) {
        int lo = i * 64;
        if (ground >= lo + 64)
            b.w[static_cast<size_t>(i)] = ~std::uint64_t{0};
        else if (ground > lo)
            b.w[static_cast<size_t>(i)] = (std::uint64_t{1} << (ground - lo)) - 1;
    }
    return b;
}

Bits Bits::single(int p) {
    Bits b;
    b.set(p);
    return b;
}

bool Bits::any() const {
    for (auto x : w)
        if (x)
            return true;
    return false;
}

int Bits::count() const {
    int c = 0;
    for (auto x : w)
        c += std::popcount(x);
    return c;
}

int Bits::lowest() const {
    for (int i = 0; i < kWords; ++i)
        if (w[static_cast<size_t>(i)])
            return i * 64 + std::countr_zero(w[static_cast<size_t>(i)]);
    return -1;
}

int Bits::next(int from) const {
    if (from >= kMaxGround)
        return -1;
    int wi = from >> 6;
    std::uint64_t cur = w[static_cast<size_t>(wi)] >> (from & 63);
    if (cur)
        return from + std::countr_zero(cur);
    for (int i = wi + 1; i < kWords; ++i)
        if (w[static_cast<size_t>(i)])
            return i * 64 + std::countr_zero(w[static_cast<size_t>(i)]);
    return -1;
}

bool Bits::subset_of(const Bits& o) const {
    for (int i = 0; i < kWords; ++i)
        if (w[static_cast<size_t>(i)] & ~o.w[static_cast<size_t>(i)])
            return false;
    return true;
}

bool Bits::intersects(const Bits& o) const {
    for (int i = 0; i < kWords; ++i)
        if (w[static_cast<size_t>(i)] & o.w[static_cast<size_t>(i)])
            return true;
    return false;
}

Bits operator&(Bits a, const Bits& b) { return a &= b; }
Bits operator|(Bits a, const Bits& b) { return a |= b; }
Bits operator^(Bits a, const Bits& b) { return a ^= b; }

Bits& Bits::operator&=(const Bits& o) {
    for (int i = 0; i < kWords; ++i)
        w[static_cast<size_t>(i)] &= o.w[static_cast<size_t>(i)];
    return *this;
}

Bits& Bits::operator|=(const Bits& o) {
    for (int i = 0; i < kWords; ++i)
        w[static_cast<size_t>(i)] |= o.w[static_cast<size_t>(i)];
    return *this;
}

Bits& Bits::operator^=(const Bits& o) {
    for (int i = 0; i < kWords; ++i)
        w[static_cast<size_t>(i)] ^= o.w[static_cast<size_t>(i)];
    return *this;
}

Bits Bits::complement(int ground) const {
    Bits full = Bits::all(ground);
    Bits r;
    for (int i = 0; i < kWords; ++i)
        r.w[static_cast<size_t>(i)] = full.w[static_cast<size_t>(i)] & ~w[static_cast<size_t>(i)];
    return r;
}

bool Bits::operator<(const Bits& o) const {
    // Order by least member, then by next differing point.
    for (int i = 0; i < kWords; ++i) {
        std::uint64_t a = w[static_cast<size_t>(i)];
        std::uint64_t b = o.w[static_cast<size_t>(i)];
        if (a != b) {
            std::uint64_t diff = a ^ b;
            std::uint64_t low = diff & (~diff + 1);
            return (a & low) != 0;
        }
    }
    return false;
}

std::vector<int> Bits::to_points() const {
    std::vector<int> pts;
    for (int p = lowest(); p >= 0; p = next(p + 1))
        pts.push_back(p);
    return pts;
}

Bits Bits::from_points(const std::vector<int>& pts, int ground) {
    Bits b;
    for (int p : pts) {
        if (p < 0 || p >= ground)
            throw schema_error("point " + std::to_string(p) + " outside ground of size " +
                               std::to_string(ground));
        b.set(p);
    }
    return b;
}

Element Element::meet(const Element& o) const {
    if (ground != o.ground)
        throw ground_mismatch("element grounds differ: " + std::to_string(ground) + " vs " +
                              std::to_string(o.ground));
    return Element(ground, bits & o.bits);
}

Element Element::join(const Element& o) const {
    if (ground != o.ground)
        throw ground_mismatch("element grounds differ: " + std::to_string(ground) + " vs " +
                              std::to_string(o.ground));
    return Element(ground, bits | o.bits);
}

Element Element::complement() const { return Element(ground, bits.complement(ground)); }

bool Element::leq(const Element& o) const {
    if (ground != o.ground)
        throw ground_mismatch("element grounds differ");
    return bits.subset_of(o.bits);
}

bool Element::disjoint(const Element& o) const {
    if (ground != o.ground)
        throw ground_mismatch("element grounds differ");
    return !bits.intersects(o.bits);
}

Subalgebra Subalgebra::from_blocks(int ground, std::vector<Bits> blocks) {
    if (ground < 1 || ground > kMaxGround)
        throw schema_error("ground size must be in [1," + std::to_string(kMaxGround) +
                           "], got " + std::to_string(ground));
    Bits seen;
    for (const Bits& b : blocks) {
        if (b.empty())
            throw schema_error("empty block in partition");
        if (!b.subset_of(Bits::all(ground)))
            throw schema_error("block contains a point outside the ground set");
        if (seen.intersects(b))
            throw schema_error("blocks overlap");
        seen |= b;
    }
    if (seen != Bits::all(ground))
        throw schema_error("blocks do not cover the ground set");
    std::sort(blocks.begin(), blocks.end(),
              [](const Bits& a, const Bits& b) { return a.lowest() < b.lowest(); });
    Subalgebra s;
    s.ground_ = ground;
    s.blocks_ = std::move(blocks);
    return s;
}

Subalgebra Subalgebra::trivial(int ground) {
    return from_blocks(ground, {Bits::all(ground)});
}

Subalgebra Subalgebra::discrete(int ground) {
    std::vector<Bits> blocks;
    blocks.reserve(static_cast<size_t>(ground));
    for (int p = 0; p < ground; ++p)
        blocks.push_back(Bits::single(p));
    return from_blocks(ground, std::move(blocks));
}

int Subalgebra::block_of(int p) const {
    for (size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].test(p))
            return static_cast<int>(i);
    throw error("point " + std::to_string(p) + " not covered by any block");
}

std::vector<int> Subalgebra::block_index_table() const {
    std::vector<int> table(static_cast<size_t>(ground_), -1);
    for (size_t i = 0; i < blocks_.size(); ++i)
        for (int p = blocks_[i].lowest(); p >= 0; p = blocks_[i].next(p + 1))
            table[static_cast<size_t>(p)] = static_cast<int>(i);
    return table;
}

bool Subalgebra::is_member(const Bits& x) const {
    for (const Bits& b : blocks_) {
        Bits inter = b & x;
        if (inter.any() && inter != b)
            return false;
    }
    return true;
}

bool Subalgebra::is_member(const Element& x) const {
    if (x.ground != ground_)
        throw ground_mismatch("element ground differs from subalgebra ground");
    return is_member(x.bits);
}

std::vector<Bits> Subalgebra::members(int maxAtoms) const {
    if (atom_count() > maxAtoms)
        throw size_overflow("member enumeration over " + std::to_string(atom_count()) +
                            " atoms exceeds the requested bound");
    std::vector<Bits> out;
    out.reserve(size_t{1} << atom_count());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atom_count()); ++mask) {
        Bits m;
        for (int i = 0; i < atom_count(); ++i)
            if ((mask >> i) & 1u)
                m |= blocks_[static_cast<size_t>(i)];
        out.push_back(m);
    }
    return out;
}

bool Subalgebra::operator<(const Subalgebra& o) const {
    if (ground_ != o.ground_)
        return ground_ < o.ground_;
    return std::lexicographical_compare(blocks_.begin(), blocks_.end(), o.blocks_.begin(),
                                        o.blocks_.end());
}

Subalgebra generate_subalgebra(int ground, const std::vector<Bits>& gens) {
    if (ground < 1 || ground > kMaxGround)
        throw schema_error("ground size must be in [1," + std::to_string(kMaxGround) + "]");
    for (const Bits& g : gens)
        if (!g.subset_of(Bits::all(ground)))
            throw schema_error("generator contains a point outside the ground set");
    // Two points fall in the same atom iff they belong to exactly the same
    // generators.
    std::map<std::vector<std::uint64_t>, size_t> seen;
    std::vector<Bits> blocks;
    size_t nwords = gens.size() / 64 + 1;
    for (int p = 0; p < ground; ++p) {
        std::vector<std::uint64_t> sig(nwords, 0);
        for (size_t gi = 0; gi < gens.size(); ++gi)
            if (gens[gi].test(p))
                sig[gi >> 6] |= std::uint64_t{1} << (gi & 63);
        auto [it, inserted] = seen.try_emplace(std::move(sig), blocks.size());
        if (inserted)
            blocks.emplace_back();
        blocks[it->second].set(p);
    }
    return Subalgebra::from_blocks(ground, std::move(blocks));
}

Subalgebra generate_subalgebra(int ground, const ElementFamily& gens) {
    std::vector<Bits> masks;
    masks.reserve(gens.size());
    for (const Element& g : gens) {
        if (g.ground != ground)
            throw ground_mismatch("generator ground " + std::to_string(g.ground) +
                                  " differs from requested ground " + std::to_string(ground));
        masks.push_back(g.bits);
    }
    return generate_subalgebra(ground, masks);
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

} // namespace

Subalgebra intersect(const Subalgebra& a, const Subalgebra& b) {
    if (a.ground() != b.ground())
        throw ground_mismatch("subalgebra grounds differ: " + std::to_string(a.ground()) +
                              " vs " + std::to_string(b.ground()));
    int m = a.ground();
    Dsu dsu(m);
    for (const auto* s : {&a, &b}) {
        for (const Bits& blk : s->blocks()) {
            int first = blk.lowest();
            for (int p = blk.next(first + 1); p >= 0; p = blk.next(p + 1))
                dsu.unite(first, p);
        }
    }
    std::vector<Bits> comp(static_cast<size_t>(m));
    std::vector<bool> used(static_cast<size_t>(m), false);
    for (int p = 0; p < m; ++p) {
        int r = dsu.find(p);
        comp[static_cast<size_t>(r)].set(p);
        used[static_cast<size_t>(r)] = true;
    }
    std::vector<Bits> blocks;
    for (int p = 0; p < m; ++p)
        if (used[static_cast<size_t>(p)])
            blocks.push_back(comp[static_cast<size_t>(p)]);
    return Subalgebra::from_blocks(m, std::move(blocks));
}

Subalgebra intersect(const std::vector<Subalgebra>& family) {
    if (family.empty())
        throw schema_error("intersect over an empty family has no ambient algebra");
    Subalgebra acc = family[0];
    for (size_t i = 1; i < family.size(); ++i)
        acc = intersect(acc, family[i]);
    return acc;
}

Subalgebra join_subalgebras(const Subalgebra& a, const Subalgebra& b) {
    if (a.ground() != b.ground())
        throw ground_mismatch("subalgebra grounds differ");
    std::vector<Bits> blocks;
    for (const Bits& x : a.blocks())
        for (const Bits& y : b.blocks()) {
            Bits inter = x & y;
            if (inter.any())
                blocks.push_back(inter);
        }
    return Subalgebra::from_blocks(a.ground(), std::move(blocks));
}

Subalgebra join_subalgebras(const std::vector<Subalgebra>& family) {
    if (family.empty())
        throw schema_error("join over an empty family has no ambient algebra");
    Subalgebra acc = family[0];
    for (size_t i = 1; i < family.size(); ++i)
        acc = join_subalgebras(acc, family[i]);
    return acc;
}

Element upper_projection(const Subalgebra& a, const Element& x) {
    if (x.ground != a.ground())
        throw ground_mismatch("element ground differs from subalgebra ground");
    Bits r;
    for (const Bits& b : a.blocks())
        if (b.intersects(x.bits))
            r |= b;
    return Element(a.ground(), r);
}

Element lower_projection(const Subalgebra& a, const Element& x) {
    return upper_projection(a, x.complement()).complement();
}

int common_ground(const std::vector<Subalgebra>& family) {
    if (family.empty())
        throw schema_error("empty family has no ground");
    int m = family[0].ground();
    for (const Subalgebra& s : family)
        if (s.ground() != m)
            throw ground_mismatch("family members live over different grounds");
    return m;
}

bool is_independent(const std::vector<Subalgebra>& family) {
    if (family.size() <= 1)
        return true;
    common_ground(family);
    // Any partial meet that dies extends to a full atom tuple with zero meet.
    std::vector<size_t> stack;
    std::vector<Bits> meets;
    meets.push_back(Bits::all(family[0].ground()));
    stack.push_back(0);
    while (!stack.empty()) {
        size_t depth = stack.size() - 1;
        size_t& idx = stack.back();
        if (idx >= family[depth].blocks().size()) {
            stack.pop_back();
            meets.pop_back();
            if (!stack.empty())
                ++stack.back();
            continue;
        }
        Bits next = meets.back() & family[depth].block(static_cast<int>(idx));
        if (next.empty())
            return false;
        if (depth + 1 == family.size()) {
            ++idx;
        } else {
            meets.push_back(next);
            stack.push_back(0);
        }
    }
    return true;
}

} // namespace boolalg
