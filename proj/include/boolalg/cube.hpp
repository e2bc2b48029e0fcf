#pragma once

#include "boolalg/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boolalg {

/// Total map between finite sets given by a value table.
struct FinMap {
    int domain = 0;
    int codomain = 0;
    std::vector<int> table;

    void validate() const;
    int operator()(int x) const { return table[static_cast<size_t>(x)]; }
};

FinMap compose(const FinMap& first, const FinMap& then);
FinMap identity_map(int size);

/// A commutative n-cube of finite sets: one set per subset of {0,...,n-1}
/// (indexed by bitmask) and one map per inclusion s ⊆ t, subject to the
/// identity and composition laws of a functor on the subset poset.
class FinCube {
public:
    FinCube() = default;
    FinCube(int n, std::vector<int> sizes);

    int dim() const { return n_; }
    int subsets() const { return 1 << n_; }
    int size(int s) const { return sizes_[static_cast<size_t>(s)]; }
    const std::vector<int>& sizes() const { return sizes_; }

    /// The map for the inclusion s ⊆ t.
    const FinMap& map(int s, int t) const;
    void set_map(int s, int t, FinMap f);

    /// Checks identity and composition for all chains s ⊆ t ⊆ u; when `why`
    /// is given, a human-readable reason is stored on failure.
    bool is_functorial(std::string* why = nullptr) const;
    void require_functorial() const;

private:
    int n_ = 0;
    std::vector<int> sizes_;
    std::vector<FinMap> maps_; // indexed s * subsets + t, for s subset of t
};

/// The cube of powersets 2^{b(s)} with coordinate-restriction maps, where
/// b(∅) is the union of the index sets and b(s) their intersection over s.
/// Points of 2^{b(s)} are bitmasks over the sorted members of b(s).
FinCube projection_cube(const std::vector<std::vector<int>>& indexSets);

struct CommutativityReport {
    bool value = true;
    /// When false: the least pairwise-compatible corner tuple with no lift.
    std::optional<std::vector<int>> counterexample;
};

/// True iff every pairwise-compatible tuple of points, one per singleton
/// face, lifts to a point of the initial corner.
CommutativityReport n_commutativity_report(const FinCube& cube, Exec exec = Exec::Auto);
bool is_n_commutative(const FinCube& cube, Exec exec = Exec::Auto);

/// Stone-dual cube of a family of subalgebras of a common powerset: the
/// corner for s is the atom set of the intersection over s (the ambient
/// ground at the initial corner) with block-containment maps.
FinCube cube_from_family(const std::vector<Subalgebra>& family);

/// The cube induced by a covering of the index set: the corner for s becomes
/// the corner for the union of the covered groups.
FinCube group_cube(const FinCube& cube, const std::vector<std::vector<int>>& covering);

/// The two (n-1)-dimensional restrictions of an n-cube: the face of subsets
/// avoiding the last coordinate, and the face of subsets containing it.
FinCube lower_face(const FinCube& cube);
FinCube upper_face(const FinCube& cube);

} // namespace boolalg
