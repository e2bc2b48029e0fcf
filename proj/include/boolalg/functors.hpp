#pragma once

#include "boolalg/core.hpp"
#include "boolalg/cube.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace boolalg {

/// The hyperspace functor (nonempty subsets, image maps) or a symmetric power
/// (size-k multisets, coordinatewise maps); on the algebra side the same tags
/// name their duals: the filter algebra and the symmetric copower.
struct FunctorId {
    enum class Kind { Exp, SP } kind = Kind::Exp;
    int k = 0; // multiset size, >= 2, for SP

    static FunctorId exp() { return {Kind::Exp, 0}; }
    static FunctorId sp(int k);
    bool is_exp() const { return kind == Kind::Exp; }
    std::string name() const;
};

/// Parses "exp", "sp2", "sp3", ... (case-insensitive).
std::optional<FunctorId> parse_functor(const std::string& text);

/// Size of the functor's image of an m-point set: 2^m - 1 nonempty subsets,
/// or C(m+k-1, k) multisets.
std::int64_t functor_space_size(FunctorId f, int m);

/// The multisets of size k over {0,...,m-1}, as sorted tuples in
/// lexicographic order.
std::vector<std::vector<int>> multisets(int m, int k);

/// Applies the functor to every corner and map of a cube.  The output is
/// checked to be functorial.
FinCube apply_functor(FunctorId f, const FinCube& cube);

/// The image of a subalgebra A <= P(m) under the algebra-side functor, as a
/// subalgebra of the powerset over the functor's new ground.  Points of the
/// new ground are grouped by the image of their block pattern.
Subalgebra functor_image(FunctorId f, const Subalgebra& a);

/// Generator-based construction of the same image (filter generators for the
/// exponential; the permutation-fixed subalgebra of the iterated free product
/// for symmetric copowers).  Small inputs only; used to pin functor_image.
Subalgebra functor_image_oracle(FunctorId f, const Subalgebra& a);

struct AlgebraSearchResult {
    bool found = false;
    std::array<Subalgebra, 3> triple;
    std::vector<int> failingTuple; // compatible image atom tuple with empty meet
    std::vector<std::string> transcript;
};

/// Lexicographically least triple of subalgebras of P(m) (partitions in
/// restricted-growth order) that commutes while the triple of functor images
/// does not.  Every witness is re-verified through independent predicate
/// paths (the Stone-dual cube route and a direct tuple recheck) before being
/// reported; the transcript notes when the image failure is weak-level too.
AlgebraSearchResult search_algebra_counterexample(FunctorId f, int m, Exec exec = Exec::Auto);

struct CubeSearchResult {
    bool found = false;
    std::vector<std::vector<int>> indexSets;
    std::vector<int> failingTuple; // corner tuple of the functored cube with no lift
    std::vector<std::string> transcript;
};

/// Lexicographically least index sets over {0,...,universe-1} whose
/// projection cube is 3-commutative while its functor image is not.
CubeSearchResult search_cube_counterexample(FunctorId f, int universe, Exec exec = Exec::Auto);

} // namespace boolalg
