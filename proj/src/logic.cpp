#include "boolalg/logic.hpp"

#include <algorithm>
#include <set>

namespace boolalg {

namespace {

size_t word_count(int vars) {
    return vars <= 6 ? 1 : (size_t{1} << (vars - 6));
}

std::uint64_t last_word_mask(int vars) {
    return vars >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1 << vars)) - 1);
}

} // namespace

TruthTable TruthTable::constant(int vars, bool value) {
    if (vars < 0 || vars > kMaxVariables)
        throw size_overflow("at most " + std::to_string(kMaxVariables) + " variables supported");
    TruthTable t{vars, std::vector<std::uint64_t>(word_count(vars), 0)};
    if (value) {
        for (auto& w : t.words)
            w = ~std::uint64_t{0};
        t.words.back() &= last_word_mask(vars);
    }
    return t;
}

TruthTable TruthTable::variable(int vars, int v) {
    TruthTable t = constant(vars, false);
    if (v < 0 || v >= vars)
        throw unknown_variable("variable index out of range");
    if (v < 6) {
        // Periodic pattern within each word.
        std::uint64_t block = 0;
        for (int row = 0; row < 64; ++row)
            if ((row >> v) & 1)
                block |= std::uint64_t{1} << row;
        for (auto& w : t.words)
            w = block;
        if (vars < 6)
            t.words[0] &= last_word_mask(vars);
    } else {
        size_t period = size_t{1} << (v - 6);
        for (size_t i = 0; i < t.words.size(); ++i)
            if ((i / period) & 1)
                t.words[i] = ~std::uint64_t{0};
    }
    return t;
}

bool TruthTable::any() const {
    for (auto w : words)
        if (w)
            return true;
    return false;
}

bool TruthTable::all() const { return *this == constant(vars, true); }

std::int64_t TruthTable::first_set() const {
    for (size_t i = 0; i < words.size(); ++i)
        if (words[i])
            return static_cast<std::int64_t>(i * 64 + static_cast<size_t>(__builtin_ctzll(words[i])));
    return -1;
}

TruthTable TruthTable::operator&(const TruthTable& o) const {
    TruthTable r = *this;
    for (size_t i = 0; i < words.size(); ++i)
        r.words[i] &= o.words[i];
    return r;
}

TruthTable TruthTable::operator|(const TruthTable& o) const {
    TruthTable r = *this;
    for (size_t i = 0; i < words.size(); ++i)
        r.words[i] |= o.words[i];
    return r;
}

TruthTable TruthTable::operator~() const {
    TruthTable r = *this;
    for (auto& w : r.words)
        w = ~w;
    if (vars < 6)
        r.words[0] &= last_word_mask(vars);
    return r;
}

bool TruthTable::subset_of(const TruthTable& o) const {
    for (size_t i = 0; i < words.size(); ++i)
        if (words[i] & ~o.words[i])
            return false;
    return true;
}

TruthTable exists_project(TruthTable t, std::uint32_t keepMask) {
    for (int v = 0; v < t.vars; ++v) {
        if ((keepMask >> v) & 1)
            continue;
        TruthTable swapped = t;
        if (v < 6) {
            int shift = 1 << v;
            std::uint64_t low = TruthTable::variable(std::min(t.vars, 6), v).words[0];
            // variable(...) marks rows with bit v set; complement marks the rest.
            std::uint64_t hi = low;
            std::uint64_t lo = ~low;
            for (size_t i = 0; i < t.words.size(); ++i) {
                std::uint64_t w = t.words[i];
                swapped.words[i] = ((w & lo) << shift) | ((w & hi) >> shift);
            }
        } else {
            size_t period = size_t{1} << (v - 6);
            for (size_t i = 0; i < t.words.size(); ++i)
                swapped.words[i] = t.words[i ^ period];
        }
        for (size_t i = 0; i < t.words.size(); ++i)
            t.words[i] |= swapped.words[i];
    }
    if (t.vars < 6)
        t.words[0] &= last_word_mask(t.vars);
    return t;
}

TruthTable restrict_cylinder(const TruthTable& t, std::uint32_t keepMask) {
    std::vector<int> kept;
    for (int v = 0; v < t.vars; ++v)
        if ((keepMask >> v) & 1)
            kept.push_back(v);
    TruthTable out = TruthTable::constant(static_cast<int>(kept.size()), false);
    for (std::uint64_t row = 0; row < out.rows(); ++row) {
        std::uint64_t full = 0;
        for (size_t i = 0; i < kept.size(); ++i)
            if ((row >> i) & 1)
                full |= std::uint64_t{1} << kept[i];
        if (t.test(full))
            out.set(row);
    }
    return out;
}

namespace {

TruthTable eval(const FormulaPtr& f, const std::vector<std::string>& order) {
    int n = static_cast<int>(order.size());
    switch (f->kind) {
    case FormulaKind::Var: {
        auto it = std::find(order.begin(), order.end(), f->var);
        if (it == order.end())
            throw unknown_variable("variable '" + f->var + "' not in the variable order");
        return TruthTable::variable(n, static_cast<int>(it - order.begin()));
    }
    case FormulaKind::Top:
        return TruthTable::constant(n, true);
    case FormulaKind::Bottom:
        return TruthTable::constant(n, false);
    case FormulaKind::Not:
        return ~eval(f->lhs, order);
    case FormulaKind::And:
        return eval(f->lhs, order) & eval(f->rhs, order);
    case FormulaKind::Or:
        return eval(f->lhs, order) | eval(f->rhs, order);
    case FormulaKind::Implies:
        return ~eval(f->lhs, order) | eval(f->rhs, order);
    case FormulaKind::Iff: {
        TruthTable a = eval(f->lhs, order);
        TruthTable b = eval(f->rhs, order);
        return (a & b) | (~a & ~b);
    }
    }
    throw error("unreachable formula kind");
}

} // namespace

TruthTable formula_to_table(const FormulaPtr& f, const std::vector<std::string>& order) {
    if (static_cast<int>(order.size()) > kMaxVariables)
        throw size_overflow("at most " + std::to_string(kMaxVariables) + " variables supported");
    return eval(f, order);
}

Element formula_to_element(const FormulaPtr& f, const std::vector<std::string>& order) {
    if (order.size() > 8)
        throw size_overflow("dense elements support at most 8 variables");
    TruthTable t = formula_to_table(f, order);
    int ground = 1 << order.size();
    Bits bits;
    for (int row = 0; row < ground; ++row)
        if (t.test(static_cast<std::uint64_t>(row)))
            bits.set(row);
    return Element(ground, bits);
}

namespace {

/// A product of literals: for every variable in `care`, the assignment bit in
/// `values` must match.
struct Cube {
    std::uint32_t care = 0;
    std::uint32_t values = 0;
};

bool cube_inside(const Cube& c, const TruthTable& t) {
    for (std::uint64_t row = 0; row < t.rows(); ++row)
        if ((static_cast<std::uint32_t>(row) & c.care) == c.values && !t.test(row))
            return false;
    return true;
}

void mark_covered(const Cube& c, TruthTable& covered) {
    for (std::uint64_t row = 0; row < covered.rows(); ++row)
        if ((static_cast<std::uint32_t>(row) & c.care) == c.values)
            covered.set(row);
}

} // namespace

FormulaPtr table_to_formula(const TruthTable& t, const std::vector<std::string>& order) {
    if (static_cast<int>(order.size()) != t.vars)
        throw schema_error("variable order length differs from the table's variable count");
    if (!t.any())
        return mk_bottom();
    if (t.all())
        return mk_top();
    // Greedy prime-implicant expansion per uncovered minterm, then drop
    // redundant cubes.
    std::vector<Cube> cubes;
    TruthTable covered = TruthTable::constant(t.vars, false);
    for (std::uint64_t row = 0; row < t.rows(); ++row) {
        if (!t.test(row) || covered.test(row))
            continue;
        Cube c{(std::uint32_t{1} << t.vars) - 1, static_cast<std::uint32_t>(row)};
        for (int v = 0; v < t.vars; ++v) {
            Cube widened{c.care & ~(std::uint32_t{1} << v), c.values & ~(std::uint32_t{1} << v)};
            if (cube_inside(widened, t))
                c = widened;
        }
        cubes.push_back(c);
        mark_covered(c, covered);
    }
    for (size_t i = cubes.size(); i-- > 0;) {
        TruthTable others = TruthTable::constant(t.vars, false);
        for (size_t j = 0; j < cubes.size(); ++j)
            if (j != i)
                mark_covered(cubes[j], others);
        bool redundant = true;
        for (std::uint64_t row = 0; row < t.rows() && redundant; ++row)
            if ((static_cast<std::uint32_t>(row) & cubes[i].care) == cubes[i].values &&
                !others.test(row))
                redundant = false;
        if (redundant)
            cubes.erase(cubes.begin() + static_cast<std::ptrdiff_t>(i));
    }
    FormulaPtr out;
    for (const Cube& c : cubes) {
        FormulaPtr term;
        for (int v = 0; v < t.vars; ++v) {
            if (!((c.care >> v) & 1))
                continue;
            FormulaPtr lit = mk_var(order[static_cast<size_t>(v)]);
            if (!((c.values >> v) & 1))
                lit = mk_not(std::move(lit));
            term = term ? mk_and(std::move(term), std::move(lit)) : lit;
        }
        if (!term)
            term = mk_top();
        out = out ? mk_or(std::move(out), std::move(term)) : term;
    }
    return out;
}

FormulaPtr element_to_formula(const Element& x, const std::vector<std::string>& order) {
    if (x.ground != (1 << order.size()))
        throw ground_mismatch("element ground is not 2^(number of variables)");
    TruthTable t = TruthTable::constant(static_cast<int>(order.size()), false);
    for (int row = 0; row < x.ground; ++row)
        if (x.bits.test(row))
            t.set(static_cast<std::uint64_t>(row));
    return table_to_formula(t, order);
}

std::vector<FormulaPtr> interpolants(const std::vector<FormulaPtr>& phis) {
    if (phis.size() < 2)
        throw schema_error("interpolation needs at least two formulas");
    size_t n = phis.size();
    std::set<std::string> allVars;
    std::vector<std::vector<std::string>> varsOf(n);
    for (size_t i = 0; i < n; ++i) {
        varsOf[i] = variables(phis[i]);
        allVars.insert(varsOf[i].begin(), varsOf[i].end());
    }
    std::vector<std::string> order(allVars.begin(), allVars.end());
    if (static_cast<int>(order.size()) > kMaxVariables)
        throw size_overflow("at most " + std::to_string(kMaxVariables) + " variables supported");
    auto indexOf = [&](const std::string& v) {
        return static_cast<int>(std::find(order.begin(), order.end(), v) - order.begin());
    };

    std::vector<TruthTable> tables;
    TruthTable conj = TruthTable::constant(static_cast<int>(order.size()), true);
    for (size_t i = 0; i < n; ++i) {
        tables.push_back(formula_to_table(phis[i], order));
        conj = conj & tables.back();
    }
    if (conj.any()) {
        std::int64_t row = conj.first_set();
        std::vector<std::pair<std::string, bool>> model;
        for (size_t v = 0; v < order.size(); ++v)
            model.emplace_back(order[v], (static_cast<std::uint64_t>(row) >> v) & 1u);
        throw satisfiable_input("the conjunction of the inputs is satisfiable", std::move(model));
    }

    // H-masks and shared-variable masks.
    std::vector<std::uint32_t> varMask(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (const auto& v : varsOf[i])
            varMask[i] |= std::uint32_t{1} << indexOf(v);
    std::vector<FormulaPtr> out;
    TruthTable psiConj = TruthTable::constant(static_cast<int>(order.size()), true);
    for (size_t i = 0; i < n; ++i) {
        std::uint32_t othersMask = 0;
        for (size_t j = 0; j < n; ++j)
            if (j != i)
                othersMask |= varMask[j];
        std::uint32_t shared = varMask[i] & othersMask;
        // Least member above phi_i of the subalgebra generated by the shared
        // variables: existential projection onto them.
        TruthTable projected = exists_project(tables[i], shared);
        if (!tables[i].subset_of(projected))
            throw internal_error("projection does not dominate its input");
        psiConj = psiConj & projected;
        std::vector<std::string> sharedNames;
        for (size_t v = 0; v < order.size(); ++v)
            if ((shared >> v) & 1)
                sharedNames.push_back(order[v]);
        FormulaPtr psi = table_to_formula(restrict_cylinder(projected, shared), sharedNames);
        if (!(formula_to_table(psi, order) == projected))
            throw internal_error("emitted normal form differs from its table");
        out.push_back(std::move(psi));
    }
    if (psiConj.any())
        throw internal_error("projected outputs are jointly satisfiable");
    return out;
}

} // namespace boolalg
