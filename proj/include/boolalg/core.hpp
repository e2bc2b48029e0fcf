#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace boolalg {

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A structured input violated a schema invariant (bad partition, bad map, ...).
class schema_error : public error {
public:
    using error::error;
};

/// Operands live over different ground sets.
class ground_mismatch : public error {
public:
    using error::error;
};

/// A constructed object would exceed the configured size cap.
class size_overflow : public error {
public:
    using error::error;
};

/// Two independent code paths disagreed on a result they must agree on.
class internal_error : public error {
public:
    using error::error;
};

/// Maximum ground size for the dense bitset representation.
inline constexpr int kMaxGround = 256;

/// Global size cap for constructed grounds/spaces, overridable via the
/// BOOLALG_SIZE_CAP environment variable.
int size_cap();

/// Execution mode for the enumeration kernels.  Auto picks the parallel path
/// for large tuple spaces and the serial one otherwise; results are identical
/// either way.
enum class Exec { Auto, Serial, Parallel };

/// Fixed-width bitset over a ground set of at most kMaxGround points.
struct Bits {
    static constexpr int kWords = kMaxGround / 64;
    std::array<std::uint64_t, kWords> w{};

    static Bits none() { return Bits{}; }
    static Bits all(int ground);
    static Bits single(int p);

    bool test(int p) const { return (w[p >> 6] >> (p & 63)) & 1u; }
    void set(int p) { w[p >> 6] |= std::uint64_t{1} << (p & 63); }
    void reset(int p) { w[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }

    bool any() const;
    bool empty() const { return !any(); }
    int count() const;
    /// Least set bit, or -1 when empty.
    int lowest() const;
    /// Least set bit >= from, or -1.
    int next(int from) const;

    bool subset_of(const Bits& o) const;
    bool intersects(const Bits& o) const;

    friend Bits operator&(Bits a, const Bits& b);
    friend Bits operator|(Bits a, const Bits& b);
    friend Bits operator^(Bits a, const Bits& b);
    Bits& operator&=(const Bits& o);
    Bits& operator|=(const Bits& o);
    Bits& operator^=(const Bits& o);
    /// Complement relative to a ground of size m.
    Bits complement(int ground) const;

    bool operator==(const Bits& o) const { return w == o.w; }
    bool operator!=(const Bits& o) const { return w != o.w; }
    bool operator<(const Bits& o) const; // lexicographic by lowest member

    std::vector<int> to_points() const;
    static Bits from_points(const std::vector<int>& pts, int ground);
};

/// Member of the powerset algebra over a ground set {0,...,ground-1}.
struct Element {
    int ground = 0;
    Bits bits;

    Element() = default;
    Element(int ground_, Bits bits_) : ground(ground_), bits(bits_) {}

    bool is_zero() const { return bits.empty(); }
    bool is_one() const { return bits == Bits::all(ground); }

    Element meet(const Element& o) const;
    Element join(const Element& o) const;
    Element complement() const;
    bool leq(const Element& o) const;
    bool disjoint(const Element& o) const;

    bool operator==(const Element& o) const { return ground == o.ground && bits == o.bits; }
    bool operator!=(const Element& o) const { return !(*this == o); }
};

using ElementFamily = std::vector<Element>;

/// A subalgebra of P(ground), stored extensionally as the partition of the
/// ground set into its atoms.  Blocks are kept in canonical order (sorted by
/// least member), so equality of subalgebras is plain comparison.
class Subalgebra {
public:
    Subalgebra() = default;

    /// Validates that the blocks partition {0,...,ground-1} and canonicalizes
    /// their order.  Throws schema_error otherwise.
    static Subalgebra from_blocks(int ground, std::vector<Bits> blocks);

    static Subalgebra trivial(int ground);
    static Subalgebra discrete(int ground);

    int ground() const { return ground_; }
    const std::vector<Bits>& blocks() const { return blocks_; }
    int atom_count() const { return static_cast<int>(blocks_.size()); }
    const Bits& block(int i) const { return blocks_[static_cast<size_t>(i)]; }

    /// Index of the block containing point p.
    int block_of(int p) const;
    /// Per-point block index table.
    std::vector<int> block_index_table() const;

    /// x is a member iff it is a union of blocks.
    bool is_member(const Bits& x) const;
    bool is_member(const Element& x) const;

    /// All members, as bitsets, in no particular order (2^atom_count of them).
    /// Throws size_overflow when atom_count exceeds maxAtoms.
    std::vector<Bits> members(int maxAtoms = 20) const;

    bool operator==(const Subalgebra& o) const {
        return ground_ == o.ground_ && blocks_ == o.blocks_;
    }
    bool operator!=(const Subalgebra& o) const { return !(*this == o); }
    bool operator<(const Subalgebra& o) const;

private:
    int ground_ = 0;
    std::vector<Bits> blocks_;
};

/// Smallest subalgebra of P(ground) containing every generator: points are
/// grouped by their membership pattern across the generators.
Subalgebra generate_subalgebra(int ground, const ElementFamily& gens);
Subalgebra generate_subalgebra(int ground, const std::vector<Bits>& gens);

/// Intersection of two subalgebras: the members common to both, computed as
/// the join of the two partitions (connected components of shared blocks).
Subalgebra intersect(const Subalgebra& a, const Subalgebra& b);
Subalgebra intersect(const std::vector<Subalgebra>& family);

/// Subalgebra generated by the union: the common refinement of the two
/// partitions (meet in the partition lattice).
Subalgebra join_subalgebras(const Subalgebra& a, const Subalgebra& b);
Subalgebra join_subalgebras(const std::vector<Subalgebra>& family);

/// Least member of A above x: the union of all blocks meeting x.
Element upper_projection(const Subalgebra& a, const Element& x);
/// Greatest member of A below x.
Element lower_projection(const Subalgebra& a, const Element& x);

/// True iff every tuple of atoms, one per subalgebra, has nonempty meet.
bool is_independent(const std::vector<Subalgebra>& family);

/// Throws ground_mismatch unless all entries share one ground; returns it.
int common_ground(const std::vector<Subalgebra>& family);

} // namespace boolalg
