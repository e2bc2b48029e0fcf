#pragma once

#include "boolalg/core.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace boolalg {

enum class FormulaKind { Var, Top, Bottom, Not, And, Or, Implies, Iff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Propositional formula syntax tree over named variables.
struct Formula {
    FormulaKind kind;
    std::string var;         // Var only
    FormulaPtr lhs, rhs;     // Not uses lhs only
};

FormulaPtr mk_var(std::string name);
FormulaPtr mk_top();
FormulaPtr mk_bottom();
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);

class parse_error : public error {
public:
    parse_error(const std::string& what, size_t offset)
        : error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

/// Grammar (ASCII): "!" negation, "&" conjunction, "|" disjunction, "->"
/// implication (right-associative), "<->" biconditional, "1"/"0" or
/// "true"/"false" constants, identifiers [A-Za-z_][A-Za-z0-9_]*.  Precedence
/// ! > & > | > -> > <->.
FormulaPtr parse_formula(std::string_view text);

/// Prints with minimal parentheses; parsing the result reproduces the tree.
std::string print_formula(const FormulaPtr& f);

/// Sorted, deduplicated variable names occurring in the formula.
std::vector<std::string> variables(const FormulaPtr& f);

bool same_formula(const FormulaPtr& a, const FormulaPtr& b);

} // namespace boolalg
