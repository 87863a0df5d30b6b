#pragma once

#include "program.hpp"

#include <sstream>
#include <string>

namespace ncomp {

enum class Style : std::uint8_t { Unicode, Ascii, Tptp };

namespace detail {

inline int term_precedence(const Term& t) {
    if (!t.is_binary()) return 3;
    return t.op == BinOp::Mul ? 2 : 1;
}

inline std::string variable_name(const Term& v, bool in_program) {
    if (in_program || v.sort == conventional_sort(v.name)) return v.name;
    return (v.sort == Sort::Integer ? "int:" : "gen:") + v.name;
}

inline void print_term(std::ostream& os, const Term& t, bool in_program) {
    switch (t.kind) {
        case Term::Kind::Numeral: os << t.value; return;
        case Term::Kind::Constant: os << t.name; return;
        case Term::Kind::Variable: os << variable_name(t, in_program); return;
        case Term::Kind::Binary: break;
    }
    int  p     = term_precedence(t);
    auto child = [&](const Term& c, bool right) {
        int  cp   = term_precedence(c);
        bool wrap = right ? cp <= p : cp < p;
        if (wrap) os << '(';
        print_term(os, c, in_program);
        if (wrap) os << ')';
    };
    child(t.lhs(), false);
    if (t.op == BinOp::Mul) os << '*';
    else os << ' ' << to_string(t.op) << ' ';
    child(t.rhs(), true);
}

inline const char* rel_symbol(Rel r, Style s) {
    if (s != Style::Unicode) return to_string(r);
    switch (r) {
        case Rel::Ne: return "≠";
        case Rel::Le: return "≤";
        case Rel::Ge: return "≥";
        default: return to_string(r);
    }
}

inline int formula_precedence(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
        case K::Iff: return 1;
        case K::Implies: return 2;
        case K::Or: return 3;
        case K::And: return 4;
        case K::Not:
        case K::Forall:
        case K::Exists: return 5;
        default: return 6;
    }
}

struct FormulaPrinter {
    std::ostream& os;
    Style         style;

    const char* sym(const char* uni, const char* ascii) const { return style == Style::Unicode ? uni : ascii; }

    void atom(const Formula& f) {
        os << f.predicate;
        if (f.args.empty()) return;
        os << '(';
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) os << ',';
            print_term(os, f.args[i], false);
        }
        os << ')';
    }

    // `trailing` is true when more of the enclosing expression follows f
    // without a closing parenthesis in between.
    void print(const Formula& f, bool trailing) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::True: os << sym("⊤", "true"); return;
            case K::False: os << sym("⊥", "false"); return;
            case K::Atom: atom(f); return;
            case K::Compare:
                print_term(os, f.lhs(), false);
                os << ' ' << rel_symbol(f.rel, style) << ' ';
                print_term(os, f.rhs(), false);
                return;
            case K::Not: {
                os << sym("¬", "~");
                const auto& s    = f.body();
                bool        wrap = formula_precedence(s) < 5;
                if (wrap) os << '(';
                print(s, wrap ? false : trailing);
                if (wrap) os << ')';
                return;
            }
            case K::Forall:
            case K::Exists: {
                if (trailing) os << '(';
                if (style == Style::Unicode) {
                    os << (f.is(K::Forall) ? "∀" : "∃");
                    for (std::size_t i = 0; i < f.vars.size(); ++i) {
                        if (i) os << ' ';
                        os << variable_name(Term::variable(f.vars[i]), false);
                    }
                    os << '(';
                }
                else {
                    os << (f.is(K::Forall) ? "forall" : "exists");
                    for (const auto& v : f.vars) os << ' ' << variable_name(Term::variable(v), false);
                    os << " (";
                }
                print(f.body(), false);
                os << ')';
                if (trailing) os << ')';
                return;
            }
            case K::And:
            case K::Or:
            case K::Implies:
            case K::Iff: break;
        }
        int         p = formula_precedence(f);
        const char* op =
            f.is(K::And) ? sym(" ∧ ", " & ") : f.is(K::Or) ? sym(" ∨ ", " | ") : f.is(K::Implies) ? sym(" → ", " -> ") : sym(" ↔ ", " <-> ");
        bool right_assoc = f.is(K::Implies) || f.is(K::Iff);
        for (std::size_t i = 0; i < f.subs.size(); ++i) {
            if (i) os << op;
            const auto& s    = f.subs[i];
            bool        last = i + 1 == f.subs.size();
            int         sp   = formula_precedence(s);
            bool        wrap = sp < p || (sp == p && !(right_assoc && last));
            if (wrap) os << '(';
            print(s, wrap ? false : (last ? trailing : true));
            if (wrap) os << ')';
        }
    }
};

inline void print_tptp_term(std::ostream& os, const Term& t) {
    switch (t.kind) {
        case Term::Kind::Numeral: os << t.value; return;
        case Term::Kind::Constant: os << t.name; return;
        case Term::Kind::Variable: os << t.name; return;
        case Term::Kind::Binary:
            os << (t.op == BinOp::Add ? "$sum(" : t.op == BinOp::Sub ? "$difference(" : "$product(");
            print_tptp_term(os, t.lhs());
            os << ',';
            print_tptp_term(os, t.rhs());
            os << ')';
            return;
    }
}

inline void print_tptp(std::ostream& os, const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
        case K::True: os << "$true"; return;
        case K::False: os << "$false"; return;
        case K::Atom:
            os << f.predicate;
            if (!f.args.empty()) {
                os << '(';
                for (std::size_t i = 0; i < f.args.size(); ++i) {
                    if (i) os << ',';
                    print_tptp_term(os, f.args[i]);
                }
                os << ')';
            }
            return;
        case K::Compare: {
            const char* fn = nullptr;
            switch (f.rel) {
                case Rel::Lt: fn = "$less"; break;
                case Rel::Le: fn = "$lesseq"; break;
                case Rel::Gt: fn = "$greater"; break;
                case Rel::Ge: fn = "$greatereq"; break;
                default: break;
            }
            if (fn) {
                os << fn << '(';
                print_tptp_term(os, f.lhs());
                os << ',';
                print_tptp_term(os, f.rhs());
                os << ')';
            }
            else {
                print_tptp_term(os, f.lhs());
                os << (f.rel == Rel::Eq ? " = " : " != ");
                print_tptp_term(os, f.rhs());
            }
            return;
        }
        case K::Not:
            os << "~(";
            print_tptp(os, f.body());
            os << ')';
            return;
        case K::Forall:
        case K::Exists: {
            bool all = f.is(K::Forall);
            os << (all ? "![" : "?[");
            std::vector<std::string> guards;
            for (std::size_t i = 0; i < f.vars.size(); ++i) {
                if (i) os << ',';
                os << f.vars[i].name;
                if (f.vars[i].sort == Sort::Integer) guards.push_back("is_int(" + f.vars[i].name + ")");
            }
            os << "]: (";
            if (!guards.empty()) {
                os << '(';
                for (std::size_t i = 0; i < guards.size(); ++i) os << (i ? " & " : "") << guards[i];
                os << (all ? ") => (" : ") & (");
                print_tptp(os, f.body());
                os << ')';
            }
            else {
                print_tptp(os, f.body());
            }
            os << ')';
            return;
        }
        default: {
            const char* op = f.is(K::And) ? " & " : f.is(K::Or) ? " | " : f.is(K::Implies) ? " => " : " <=> ";
            for (std::size_t i = 0; i < f.subs.size(); ++i) {
                if (i) os << op;
                os << '(';
                print_tptp(os, f.subs[i]);
                os << ')';
            }
            return;
        }
    }
}

} // namespace detail

inline std::string print_term(const Term& t, bool in_program = false) {
    std::ostringstream os;
    detail::print_term(os, t, in_program);
    return os.str();
}

/// Renders a formula. Tptp style yields an annotated `fof(name, axiom, ...)`
/// statement in which integer variables are guarded by `is_int`.
inline std::string print_formula(const Formula& f, Style style = Style::Unicode, const std::string& name = "axiom") {
    std::ostringstream os;
    if (style == Style::Tptp) {
        os << "fof(" << name << ", axiom, ";
        detail::print_tptp(os, f);
        os << ").";
        return os.str();
    }
    detail::FormulaPrinter{os, style}.print(f, false);
    return os.str();
}

inline std::string print_atom(const Atom& a) {
    std::ostringstream os;
    os << a.predicate;
    if (!a.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) os << ',';
            detail::print_term(os, a.args[i], true);
        }
        os << ')';
    }
    return os.str();
}

inline std::string print_literal(const BodyLiteral& l) {
    switch (l.kind) {
        case BodyLiteral::Kind::Positive: return print_atom(l.atom);
        case BodyLiteral::Kind::Negated: return "not " + print_atom(l.atom);
        case BodyLiteral::Kind::Comparison: break;
    }
    const auto& c   = l.cmp;
    std::string out = print_term(c.lhs, true);
    if (c.is_interval()) return out + " = " + print_term(c.low(), true) + ".." + print_term(c.high, true);
    return out + " " + to_string(c.rel) + " " + print_term(c.rhs, true);
}

inline std::string print_rule(const Rule& r) {
    std::string out;
    if (r.is_choice()) out = "{" + print_atom(r.head) + "}";
    else if (r.has_head()) out = print_atom(r.head);
    if (!r.body.empty() || r.is_constraint()) {
        out += r.has_head() ? " :- " : ":- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += print_literal(r.body[i]);
        }
    }
    return out + ".";
}

inline std::string print_program(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) out += print_rule(r) + "\n";
    return out;
}

} // namespace ncomp
