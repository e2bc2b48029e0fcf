#pragma once

#include "boolalg/core.hpp"
#include "boolalg/formula.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace boolalg {

inline constexpr int kMaxVariables = 20;

/// Dense truth table over 2^vars assignments; bit v of an assignment index
/// gives the value of variable v.
struct TruthTable {
    int vars = 0;
    std::vector<std::uint64_t> words;

    static TruthTable constant(int vars, bool value);
    static TruthTable variable(int vars, int v);

    std::uint64_t rows() const { return std::uint64_t{1} << vars; }
    bool test(std::uint64_t row) const { return (words[row >> 6] >> (row & 63)) & 1u; }
    void set(std::uint64_t row) { words[row >> 6] |= std::uint64_t{1} << (row & 63); }

    bool any() const;
    bool all() const;
    std::int64_t first_set() const; // -1 when empty

    TruthTable operator&(const TruthTable& o) const;
    TruthTable operator|(const TruthTable& o) const;
    TruthTable operator~() const;
    bool subset_of(const TruthTable& o) const;
    bool operator==(const TruthTable& o) const { return vars == o.vars && words == o.words; }
};

/// Existentially quantifies away every variable not in keepMask; the result
/// is a cylinder over the kept variables, still indexed by all vars.
TruthTable exists_project(TruthTable t, std::uint32_t keepMask);

/// Re-indexes a cylinder over the kept variables as a table over just those
/// variables (in ascending index order).
TruthTable restrict_cylinder(const TruthTable& t, std::uint32_t keepMask);

class unknown_variable : public error {
public:
    using error::error;
};

TruthTable formula_to_table(const FormulaPtr& f, const std::vector<std::string>& order);

/// The satisfying set as a member of the powerset over 2^|order| assignment
/// points; requires at most 8 variables (dense core representation).
Element formula_to_element(const FormulaPtr& f, const std::vector<std::string>& order);

/// A greedily merged, irredundant disjunctive normal form whose satisfying
/// set is exactly the table (round-trips through formula_to_table).
FormulaPtr table_to_formula(const TruthTable& t, const std::vector<std::string>& order);
FormulaPtr element_to_formula(const Element& x, const std::vector<std::string>& order);

class satisfiable_input : public error {
public:
    satisfiable_input(const std::string& what, std::vector<std::pair<std::string, bool>> model)
        : error(what), model_(std::move(model)) {}
    const std::vector<std::pair<std::string, bool>>& model() const { return model_; }

private:
    std::vector<std::pair<std::string, bool>> model_;
};

/// Given jointly unsatisfiable formulas, returns one formula per input such
/// that each input entails its output, the outputs are jointly unsatisfiable,
/// and each output only uses variables its input shares with another input.
/// Each output is the least such member: the projection of its input onto
/// the subalgebra generated by the shared variables.  Throws
/// satisfiable_input (with a model) when the conjunction is satisfiable.
std::vector<FormulaPtr> interpolants(const std::vector<FormulaPtr>& phis);

} // namespace boolalg
