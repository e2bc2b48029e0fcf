#include "boolalg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace boolalg {

FormulaPtr mk_var(std::string name) {
    return std::make_shared<Formula>(Formula{FormulaKind::Var, std::move(name), nullptr, nullptr});
}
FormulaPtr mk_top() { return std::make_shared<Formula>(Formula{FormulaKind::Top, "", nullptr, nullptr}); }
FormulaPtr mk_bottom() {
    return std::make_shared<Formula>(Formula{FormulaKind::Bottom, "", nullptr, nullptr});
}
FormulaPtr mk_not(FormulaPtr f) {
    return std::make_shared<Formula>(Formula{FormulaKind::Not, "", std::move(f), nullptr});
}
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{FormulaKind::And, "", std::move(a), std::move(b)});
}
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{FormulaKind::Or, "", std::move(a), std::move(b)});
}
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{FormulaKind::Implies, "", std::move(a), std::move(b)});
}
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{FormulaKind::Iff, "", std::move(a), std::move(b)});
}

namespace {

struct Parser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(std::string_view token) {
        skip_ws();
        if (text.substr(pos, token.size()) == token) {
            pos += token.size();
            return true;
        }
        return false;
    }

    bool peek(std::string_view token) {
        skip_ws();
        return text.substr(pos, token.size()) == token;
    }

    FormulaPtr parse() {
        FormulaPtr f = iff();
        skip_ws();
        if (pos != text.size())
            throw parse_error("unexpected input", pos);
        return f;
    }

    FormulaPtr iff() {
        FormulaPtr f = implies();
        while (true) {
            skip_ws();
            if (!eat("<->"))
                return f;
            f = mk_iff(std::move(f), implies());
        }
    }

    FormulaPtr implies() {
        FormulaPtr f = disjunction();
        skip_ws();
        if (peek("<->"))
            return f;
        if (eat("->"))
            return mk_implies(std::move(f), implies());
        return f;
    }

    FormulaPtr disjunction() {
        FormulaPtr f = conjunction();
        while (eat("|"))
            f = mk_or(std::move(f), conjunction());
        return f;
    }

    FormulaPtr conjunction() {
        FormulaPtr f = unary();
        while (eat("&"))
            f = mk_and(std::move(f), unary());
        return f;
    }

    FormulaPtr unary() {
        if (eat("!"))
            return mk_not(unary());
        return atom();
    }

    FormulaPtr atom() {
        skip_ws();
        if (pos >= text.size())
            throw parse_error("expected a formula", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            FormulaPtr f = iff();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')')
                throw parse_error("expected ')'", pos);
            ++pos;
            return f;
        }
        if (c == '1') {
            ++pos;
            return mk_top();
        }
        if (c == '0') {
            ++pos;
            return mk_bottom();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
            std::string name(text.substr(start, pos - start));
            if (name == "true")
                return mk_top();
            if (name == "false")
                return mk_bottom();
            return mk_var(std::move(name));
        }
        throw parse_error("expected a formula", pos);
    }
};

int precedence(FormulaKind k) {
    switch (k) {
    case FormulaKind::Iff:
        return 1;
    case FormulaKind::Implies:
        return 2;
    case FormulaKind::Or:
        return 3;
    case FormulaKind::And:
        return 4;
    case FormulaKind::Not:
        return 5;
    default:
        return 6;
    }
}

void print_rec(const FormulaPtr& f, int parentPrec, bool rightChild, std::string& out) {
    int prec = precedence(f->kind);
    // Left-associative chains need parens on a right child of equal
    // precedence; the right-associative implication is the other way round.
    bool needParens = prec < parentPrec ||
                      (prec == parentPrec && rightChild && f->kind != FormulaKind::Implies &&
                       f->kind != FormulaKind::Not) ||
                      (prec == parentPrec && !rightChild && f->kind == FormulaKind::Implies);
    if (needParens)
        out += '(';
    switch (f->kind) {
    case FormulaKind::Var:
        out += f->var;
        break;
    case FormulaKind::Top:
        out += '1';
        break;
    case FormulaKind::Bottom:
        out += '0';
        break;
    case FormulaKind::Not:
        out += '!';
        print_rec(f->lhs, prec, true, out);
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
        const char* op = f->kind == FormulaKind::And       ? " & "
                         : f->kind == FormulaKind::Or      ? " | "
                         : f->kind == FormulaKind::Implies ? " -> "
                                                           : " <-> ";
        print_rec(f->lhs, prec, false, out);
        out += op;
        print_rec(f->rhs, prec, true, out);
        break;
    }
    }
    if (needParens)
        out += ')';
}

void collect_vars(const FormulaPtr& f, std::set<std::string>& out) {
    if (!f)
        return;
    if (f->kind == FormulaKind::Var)
        out.insert(f->var);
    collect_vars(f->lhs, out);
    collect_vars(f->rhs, out);
}

} // namespace

FormulaPtr parse_formula(std::string_view text) {
    Parser p{text};
    return p.parse();
}

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    print_rec(f, 0, false, out);
    return out;
}

std::vector<std::string> variables(const FormulaPtr& f) {
    std::set<std::string> s;
    collect_vars(f, s);
    return {s.begin(), s.end()};
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
    if (!a || !b)
        return a == b;
    if (a->kind != b->kind || a->var != b->var)
        return false;
    return same_formula(a->lhs, b->lhs) && same_formula(a->rhs, b->rhs);
}

} // namespace boolalg
