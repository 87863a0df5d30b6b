#pragma once

#include "error.hpp"
#include "ground.hpp"
#include "printer.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace ncomp {

/// forall V (p(V) <-> body), where V are distinct variables.
struct DefinitionAxiom {
    std::string      predicate;
    std::vector<Var> head_vars;
    Formula          body;
    Formula          sentence;

    PredicateSymbol symbol() const { return {predicate, head_vars.size()}; }
};

namespace detail {

inline void body_predicates(const Formula& f, std::vector<PredicateSymbol>& out) {
    if (f.is(Formula::Kind::Atom)) {
        PredicateSymbol s{f.predicate, f.args.size()};
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    for (const auto& s : f.subs) body_predicates(s, out);
}

} // namespace detail

/// Checks that the sentences form a chain of explicit definitions: each one
/// defines a new predicate in terms of earlier ones only.
inline std::vector<DefinitionAxiom> parse_axiom_chain(const std::vector<Formula>& sentences) {
    std::vector<DefinitionAxiom> out;
    std::vector<PredicateSymbol> defined;
    for (const auto& f : sentences) {
        std::string text = print_formula(f, Style::Ascii);
        auto        fail = [&](const std::string& why) { throw NotADefinition("not a definition: " + text + ": " + why); };
        const Formula* g = &f;
        std::vector<Var> bound;
        while (g->is(Formula::Kind::Forall)) {
            bound.insert(bound.end(), g->vars.begin(), g->vars.end());
            g = &g->body();
        }
        if (!g->is(Formula::Kind::Iff)) fail("expected an equivalence");
        const Formula& head = g->sub(0);
        if (!head.is(Formula::Kind::Atom)) fail("left side is not an atom");
        DefinitionAxiom d;
        d.predicate = head.predicate;
        for (const auto& t : head.args) {
            if (!t.is_variable()) fail("head argument " + print_term(t) + " is not a variable");
            Var v = t.var();
            if (std::find(d.head_vars.begin(), d.head_vars.end(), v) != d.head_vars.end()) {
                fail("variable " + v.name + " is repeated in the head");
            }
            d.head_vars.push_back(v);
        }
        for (const auto& v : bound) {
            if (std::find(d.head_vars.begin(), d.head_vars.end(), v) == d.head_vars.end()) {
                fail("quantified variable " + v.name + " does not occur in the head");
            }
        }
        d.body = g->sub(1);
        for (const auto& v : free_variables_ordered(d.body)) {
            if (std::find(d.head_vars.begin(), d.head_vars.end(), v) == d.head_vars.end()) {
                fail("variable " + v.name + " is free in the body but not in the head");
            }
        }
        PredicateSymbol sym = d.symbol();
        if (std::find(defined.begin(), defined.end(), sym) != defined.end()) fail(to_string(sym) + " is defined twice");
        std::vector<PredicateSymbol> used;
        detail::body_predicates(d.body, used);
        for (const auto& u : used) {
            if (u == sym) fail("recursive: " + to_string(sym) + " occurs in its own definition");
            if (std::find(defined.begin(), defined.end(), u) != defined.end()) continue;
            bool later = false;
            for (std::size_t k = out.size() + 1; k < sentences.size(); ++k) {
                const Formula* h = &sentences[k];
                while (h->is(Formula::Kind::Forall)) h = &h->body();
                if (h->is(Formula::Kind::Iff) && h->sub(0).is(Formula::Kind::Atom) &&
                    PredicateSymbol{h->sub(0).predicate, h->sub(0).args.size()} == u) {
                    later = true;
                }
            }
            fail(later ? "forward reference to " + to_string(u) : to_string(u) + " is not defined");
        }
        d.sentence = fo::forall(d.head_vars, fo::iff(head, d.body));
        defined.push_back(sym);
        out.push_back(std::move(d));
    }
    return out;
}

/// The general variable standing for an integer variable: X followed by its name.
inline Var variable_rename_for_generality(const Var& v) { return Var{"X" + v.name, Sort::General}; }

namespace detail {

struct Reverser {
    const DefinitionAxiom&                    axiom;
    std::vector<std::pair<std::string, std::string>> names;

    [[noreturn]] void unsupported(const Formula& where, const std::string& why) const {
        throw UnsupportedShape("unsupported shape in the definition of " + to_string(axiom.symbol()) + " at `" +
                               print_formula(where, Style::Ascii) + "`: " + why);
    }

    std::string name_of(const Var& v) const {
        for (const auto& [from, to] : names) {
            if (from == v.name) return to;
        }
        return v.name;
    }

    Term term(const Term& t) const {
        switch (t.kind) {
            case Term::Kind::Variable: return Term::variable(name_of(t.var()));
            case Term::Kind::Binary: return Term::binary(t.op, term(t.lhs()), term(t.rhs()));
            default: return t;
        }
    }

    Atom atom(const Formula& f) const {
        Atom a;
        a.predicate = f.predicate;
        for (const auto& t : f.args) a.args.push_back(term(t));
        return a;
    }

    void literals(const Formula& f, std::vector<BodyLiteral>& out) const {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::True: return;
            case K::And:
                for (const auto& s : f.subs) literals(s, out);
                return;
            case K::Atom: out.push_back(BodyLiteral::positive(atom(f))); return;
            case K::Compare:
                out.push_back(BodyLiteral::comparison(Comparison::relational(term(f.lhs()), f.rel, term(f.rhs()))));
                return;
            case K::Not: {
                const Formula& g = f.body();
                if (g.is(K::Atom)) {
                    out.push_back(BodyLiteral::negated(atom(g)));
                    return;
                }
                if (g.is(K::Compare)) {
                    out.push_back(
                        BodyLiteral::comparison(Comparison::relational(term(g.lhs()), negate(g.rel), term(g.rhs()))));
                    return;
                }
                if (g.is(K::Exists)) {
                    unsupported(f, "negated existential quantifier; this needs a conditional literal, which regular "
                                   "programs do not have");
                }
                unsupported(f, "negation applies to a formula that is not an atom");
            }
            case K::False: unsupported(f, "falsity in the body");
            case K::Or: unsupported(f, "disjunction");
            case K::Implies: unsupported(f, "implication");
            case K::Iff: unsupported(f, "equivalence");
            case K::Forall: unsupported(f, "universal quantifier in the body");
            case K::Exists: unsupported(f, "existential quantifier below the top of the body");
        }
    }

    Rule run() {
        std::set<std::string> taken;
        collect_all_names(axiom.sentence, taken);
        std::vector<Var> vars = axiom.head_vars;
        const Formula*   body = &axiom.body;
        while (body->is(Formula::Kind::Exists)) {
            vars.insert(vars.end(), body->vars.begin(), body->vars.end());
            body = &body->body();
        }
        for (const auto& v : vars) {
            if (v.sort != Sort::Integer) continue;
            std::string n = variable_rename_for_generality(v).name;
            while (taken.count(n)) n += "_";
            taken.insert(n);
            names.emplace_back(v.name, n);
        }
        Atom head;
        head.predicate = axiom.predicate;
        for (const auto& v : axiom.head_vars) head.args.push_back(Term::variable(name_of(v)));
        std::vector<BodyLiteral> lits;
        literals(*body, lits);
        return Rule::basic(std::move(head), std::move(lits));
    }

    static void collect_all_names(const Formula& f, std::set<std::string>& out) {
        std::unordered_set<std::string> s;
        collect_variable_names(f, s);
        out.insert(s.begin(), s.end());
    }
};

} // namespace detail

/// Turns each definition into a rule: the equivalence becomes an implication
/// from right to left, existential quantifiers at the top of the body are
/// dropped, integer variables become general variables and negation becomes
/// `not`. A negated comparison is replaced by the complementary comparison.
inline Program reverse_completion(const std::vector<DefinitionAxiom>& chain) {
    Program p;
    for (const auto& d : chain) p.rules.push_back(detail::Reverser{d, {}}.run());
    return p;
}

namespace detail {

inline bool under_arithmetic(const std::string& name, const Term& t) {
    return t.is_binary() && occurs_in(name, t);
}

inline bool under_arithmetic(const std::string& name, const Rule& r) {
    for (const auto& t : r.head.args) {
        if (under_arithmetic(name, t)) return true;
    }
    for (const auto& l : r.body) {
        if (l.is_atom()) {
            for (const auto& t : l.atom.args) {
                if (under_arithmetic(name, t)) return true;
            }
        }
        else if (under_arithmetic(name, l.cmp.lhs) || under_arithmetic(name, l.cmp.rhs) || under_arithmetic(name, l.cmp.high)) {
            return true;
        }
    }
    return false;
}

// Numerals and arithmetic are integers; so is a variable used in arithmetic.
inline bool integer_valued(const Term& t, const Rule& r) {
    if (t.is_numeral() || t.is_binary()) return true;
    return t.is_variable() && under_arithmetic(t.name, r);
}

inline Term shifted(const Term& t, std::int64_t by) {
    if (t.is_numeral()) {
        if (auto v = apply(BinOp::Add, t.value, by)) return Term::numeral(*v);
    }
    return by > 0 ? Term::binary(BinOp::Add, t, Term::numeral(by)) : Term::binary(BinOp::Sub, t, Term::numeral(-by));
}

struct Bound {
    std::size_t literal = 0;
    Term        value;
};

// `t < X`, `X > t` and friends as lower or upper bounds on X.
inline std::optional<Bound> bound_on(const std::string& x, const Rule& r, bool lower, const std::set<std::string>& avoid) {
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        const auto& l = r.body[i];
        if (l.kind != BodyLiteral::Kind::Comparison || l.cmp.is_interval()) continue;
        Rel         rel = l.cmp.rel;
        const Term* other = nullptr;
        if (l.cmp.lhs.is_variable() && l.cmp.lhs.name == x) other = &l.cmp.rhs;
        else if (l.cmp.rhs.is_variable() && l.cmp.rhs.name == x) {
            other = &l.cmp.lhs;
            rel   = mirror(rel);
        }
        if (!other || occurs_in(x, *other)) continue;
        bool clash = false;
        for_each_variable(*other, [&](const Term& v) { clash = clash || avoid.count(v.name); });
        if (clash) continue;
        if (lower && rel == Rel::Gt) return Bound{i, shifted(*other, 1)};
        if (lower && rel == Rel::Ge) return Bound{i, *other};
        if (!lower && !integer_valued(*other, r)) continue;
        if (!lower && rel == Rel::Lt) return Bound{i, shifted(*other, -1)};
        if (!lower && rel == Rel::Le) return Bound{i, *other};
    }
    return std::nullopt;
}

} // namespace detail

/// Replaces a lower and an upper comparison bound on a variable that nothing
/// else binds by an interval, as in `M = 2..N-1` for `1 < M, M < N`. Only
/// applied when the variable occurs in arithmetic and the upper bound is an
/// integer, so that symbolic constants cannot satisfy the comparisons.
inline Program rewrite_intervals(Program p) {
    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        Rule&                 r = p.rules[ri];
        std::set<std::string> done;
        for (bool changed = true; changed;) {
            changed = false;
            Program one;
            one.rules.push_back(r);
            for (const auto& note : window_bound_variables(one)) {
                const std::string& x = note.variable;
                if (done.count(x) || !detail::under_arithmetic(x, r)) continue;
                auto avoid = done;
                avoid.insert(x);
                auto lo = detail::bound_on(x, r, true, avoid);
                auto hi = detail::bound_on(x, r, false, avoid);
                if (!lo || !hi) continue;
                auto first  = std::min(lo->literal, hi->literal);
                auto second = std::max(lo->literal, hi->literal);
                r.body[first] = BodyLiteral::comparison(Comparison::interval(Term::variable(x), lo->value, hi->value));
                r.body.erase(r.body.begin() + static_cast<std::ptrdiff_t>(second));
                done.insert(x);
                changed = true;
                break;
            }
        }
    }
    return p;
}

} // namespace ncomp
