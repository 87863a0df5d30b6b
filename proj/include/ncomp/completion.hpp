#pragma once

#include "error.hpp"
#include "printer.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace ncomp {

/// Deterministic supply of fresh variable names: `prefix` followed by a
/// counter, skipping anything already in use.
class NameSupply {
public:
    NameSupply() = default;
    explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

    void reserve(const std::string& name) { used_.insert(name); }
    bool in_use(const std::string& name) const { return used_.count(name) != 0; }

    Var fresh(const std::string& prefix, Sort sort) {
        int& n = counters_[prefix];
        for (;;) {
            std::string name = prefix + std::to_string(++n);
            if (used_.insert(name).second) return Var{name, sort};
        }
    }

private:
    std::set<std::string>      used_;
    std::map<std::string, int> counters_;
};

/// The function f_R: critical variables of one rule mapped to pairwise
/// distinct integer variables that do not occur in the rule.
struct Renaming {
    std::vector<std::pair<std::string, Var>> map;

    const Var* find(const std::string& name) const {
        for (const auto& [k, v] : map) {
            if (k == name) return &v;
        }
        return nullptr;
    }
};

/// Critical variables of a rule, in order of first occurrence: those with an
/// occurrence under + - * or inside an interval comparison.
inline std::vector<std::string> critical_variables(const Rule& r) {
    std::vector<std::string> out;
    auto add = [&](const Term& v) {
        if (std::find(out.begin(), out.end(), v.name) == out.end()) out.push_back(v.name);
    };
    auto scan = [&](const Term& t) {
        if (t.is_binary()) for_each_variable(t, add);
    };
    if (r.has_head()) {
        for (const auto& t : r.head.args) scan(t);
    }
    for (const auto& l : r.body) {
        if (l.is_atom()) {
            for (const auto& t : l.atom.args) scan(t);
        }
        else if (l.cmp.is_interval()) {
            for_each_variable(l.cmp.lhs, add);
            for_each_variable(l.cmp.low(), add);
            for_each_variable(l.cmp.high, add);
        }
        else {
            scan(l.cmp.lhs);
            scan(l.cmp.rhs);
        }
    }
    return out;
}

/// A renaming for `r` drawing integer names from `names`.
inline Renaming make_renaming(const Rule& r, NameSupply& names, const std::string& prefix = "I") {
    Renaming f;
    for (auto& v : critical_variables(r)) f.map.emplace_back(v, names.fresh(prefix, Sort::Integer));
    return f;
}

struct RenamedRule {
    std::vector<Term> head_args;
    Formula           body;
};

namespace detail {

inline Term rename_term(const Term& t, const Renaming& f) {
    switch (t.kind) {
        case Term::Kind::Numeral:
        case Term::Kind::Constant: return t;
        case Term::Kind::Variable:
            if (const Var* v = f.find(t.name)) return Term::variable(*v);
            return Term::variable(t.name, Sort::General);
        case Term::Kind::Binary: return Term::binary(t.op, rename_term(t.lhs(), f), rename_term(t.rhs(), f));
    }
    return t;
}

inline Formula rename_atom(const Atom& a, const Renaming& f) {
    std::vector<Term> args;
    for (const auto& t : a.args) args.push_back(rename_term(t, f));
    return fo::atom(a.predicate, std::move(args));
}

inline Formula rename_literal(const BodyLiteral& l, const Renaming& f) {
    switch (l.kind) {
        case BodyLiteral::Kind::Positive: return rename_atom(l.atom, f);
        case BodyLiteral::Kind::Negated: return fo::neg(rename_atom(l.atom, f));
        case BodyLiteral::Kind::Comparison: break;
    }
    const auto& c = l.cmp;
    if (!c.is_interval()) return fo::compare(rename_term(c.lhs, f), c.rel, rename_term(c.rhs, f));
    Term t = rename_term(c.lhs, f);
    return fo::conj({fo::compare(rename_term(c.low(), f), Rel::Le, t), fo::compare(t, Rel::Le, rename_term(c.high, f))});
}

} // namespace detail

/// Applies f_R to the head arguments and the body of `r`.
inline RenamedRule apply_renaming(const Rule& r, const Renaming& f) {
    auto crit = critical_variables(r);
    std::set<std::string> domain;
    std::set<std::string> range;
    for (const auto& [k, v] : f.map) {
        domain.insert(k);
        if (v.sort != Sort::Integer) throw RenamingDomainMismatch("renaming target " + v.name + " is not an integer variable");
        if (!range.insert(v.name).second) throw RenamingDomainMismatch("renaming is not injective on " + v.name);
    }
    if (domain != std::set<std::string>(crit.begin(), crit.end())) {
        throw RenamingDomainMismatch("renaming domain differs from the critical variables of: " + print_rule(r));
    }
    auto vars = rule_variables(r);
    for (const auto& n : range) {
        if (std::find(vars.begin(), vars.end(), n) != vars.end()) {
            throw RenamingDomainMismatch("renaming target " + n + " occurs in: " + print_rule(r));
        }
    }
    RenamedRule out;
    if (r.has_head()) {
        for (const auto& t : r.head.args) out.head_args.push_back(detail::rename_term(t, f));
    }
    std::vector<Formula> parts;
    for (const auto& l : r.body) parts.push_back(detail::rename_literal(l, f));
    out.body = fo::conj(std::move(parts));
    return out;
}

struct Disjunct {
    std::size_t      rule_index = 0; // position of the rule in the program
    std::vector<Var> prefix;         // U_R
    Formula          matrix;         // F_R
};

struct CompletedDefinition {
    PredicateSymbol       predicate;
    std::vector<Var>      head_vars; // V
    std::vector<Disjunct> disjuncts;
    Formula               sentence;
};

inline bool occurs_in(const Program& p, const PredicateSymbol& sym) {
    auto syms = predicate_symbols(p);
    return std::find(syms.begin(), syms.end(), sym) != syms.end();
}

inline bool defines(const Rule& r, const PredicateSymbol& sym) {
    return r.has_head() && signature(r.head) == sym;
}

/// The completed definition of `sym` in `p`: the sentence
/// forall V (p(V) <-> OR_R exists U_R F_R) with rules taken in program order.
inline CompletedDefinition completed_definition(const Program& p, const PredicateSymbol& sym) {
    if (!occurs_in(p, sym)) throw UnknownPredicate("predicate " + to_string(sym) + " does not occur in the program");
    NameSupply outer(program_variable_names(p));
    CompletedDefinition def;
    def.predicate = sym;
    std::vector<Term> vs;
    for (std::size_t i = 0; i < sym.arity; ++i) {
        def.head_vars.push_back(outer.fresh("V", Sort::General));
        vs.push_back(Term::variable(def.head_vars.back()));
    }
    Formula              head = fo::atom(sym.name, vs);
    std::vector<Formula> alternatives;
    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const Rule& r = p.rules[ri];
        if (!defines(r, sym)) continue;
        NameSupply local(program_variable_names(p));
        for (const auto& v : def.head_vars) local.reserve(v.name);
        Renaming             f  = make_renaming(r, local);
        RenamedRule          rr = apply_renaming(r, f);
        std::vector<Formula> parts;
        if (!r.body.empty()) parts.push_back(rr.body);
        for (std::size_t i = 0; i < sym.arity; ++i) parts.push_back(fo::eq(vs[i], rr.head_args[i]));
        std::vector<Var> prefix;
        for (auto& v : free_variables_ordered(fo::conj(parts))) {
            if (std::find(def.head_vars.begin(), def.head_vars.end(), v) == def.head_vars.end()) prefix.push_back(v);
        }
        if (r.is_choice()) parts.push_back(head);
        Disjunct d;
        d.rule_index = ri;
        d.prefix     = prefix;
        d.matrix     = fo::conj(std::move(parts));
        alternatives.push_back(fo::exists(prefix, d.matrix));
        def.disjuncts.push_back(std::move(d));
    }
    def.sentence = fo::forall(def.head_vars, fo::iff(head, fo::disj(std::move(alternatives))));
    return def;
}

/// The completed definition with its outer general variables replaced by
/// fresh integer variables.
inline Formula arithmetic_completed_definition(const Program& p, const PredicateSymbol& sym) {
    CompletedDefinition def = completed_definition(p, sym);
    if (def.head_vars.empty()) return def.sentence;
    std::unordered_set<std::string> used;
    collect_variable_names(def.sentence, used);
    NameSupply       names(std::set<std::string>(used.begin(), used.end()));
    std::vector<Var> ints;
    Formula          body = def.sentence.body();
    for (const auto& v : def.head_vars) {
        ints.push_back(names.fresh("N", Sort::Integer));
        body = substitute(body, v, Term::variable(ints.back()));
    }
    return fo::forall(std::move(ints), std::move(body));
}

/// Universal closure of the negated renamed body of a constraint.
inline Formula constraint_sentence(const Program& p, const Rule& r) {
    NameSupply  names(program_variable_names(p));
    RenamedRule rr = apply_renaming(r, make_renaming(r, names));
    return universal_closure(fo::neg(rr.body));
}

/// NCOMP: completed definitions of all predicate symbols in order of first
/// occurrence, then one sentence per constraint in program order.
inline std::vector<Formula> ncomp(const Program& p) {
    std::vector<Formula> out;
    for (const auto& sym : predicate_symbols(p)) out.push_back(completed_definition(p, sym).sentence);
    for (const auto& r : p.rules) {
        if (r.is_constraint()) out.push_back(constraint_sentence(p, r));
    }
    return out;
}

namespace detail {

inline bool is_true(const Formula& f) { return f.is(Formula::Kind::True); }
inline bool is_false(const Formula& f) { return f.is(Formula::Kind::False); }

inline bool term_mentions(const Term& t, const Var& v) {
    bool found = false;
    for_each_variable(t, [&](const Term& x) { found = found || x.var() == v; });
    return found;
}

// Tries to eliminate one quantified variable of `exists U (C1 & ... & Cn)`
// through a conjunct X = t or t = X.
inline bool eliminate_equality(Formula& f) {
    Formula& body = f.subs[0];
    std::vector<Formula> conjuncts = body.is(Formula::Kind::And) ? body.subs : std::vector<Formula>{body};
    for (std::size_t vi = 0; vi < f.vars.size(); ++vi) {
        const Var x = f.vars[vi];
        for (std::size_t ci = 0; ci < conjuncts.size(); ++ci) {
            const Formula& c = conjuncts[ci];
            if (!c.is(Formula::Kind::Compare) || c.rel != Rel::Eq) continue;
            for (int side = 0; side < 2; ++side) {
                const Term& lhs = c.args[side];
                const Term& rhs = c.args[1 - side];
                if (!lhs.is_variable() || lhs.var() != x || term_mentions(rhs, x)) continue;
                if (x.sort == Sort::Integer && sort_of(rhs) != Sort::Integer) continue;
                Term by = rhs;
                std::vector<Formula> rest;
                for (std::size_t k = 0; k < conjuncts.size(); ++k) {
                    if (k != ci) rest.push_back(substitute(conjuncts[k], x, by));
                }
                std::vector<Var> vars = f.vars;
                vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(vi));
                f = fo::exists(std::move(vars), fo::conj(std::move(rest)));
                return true;
            }
        }
    }
    return false;
}

inline Formula simplify_once(const Formula& in, bool& changed) {
    using K   = Formula::Kind;
    Formula f = in;
    for (auto& s : f.subs) s = simplify_once(s, changed);
    switch (f.kind) {
        case K::Not: {
            const Formula& g = f.body();
            if (g.is(K::Not)) {
                changed = true;
                return g.body();
            }
            if (is_true(g)) return changed = true, fo::bottom();
            if (is_false(g)) return changed = true, fo::top();
            return f;
        }
        case K::And:
        case K::Or: {
            bool                 conj = f.is(K::And);
            std::vector<Formula> kept;
            for (auto& s : f.subs) {
                if ((conj && is_true(s)) || (!conj && is_false(s))) {
                    changed = true;
                    continue;
                }
                if ((conj && is_false(s)) || (!conj && is_true(s))) {
                    changed = true;
                    return s;
                }
                kept.push_back(s);
            }
            Formula out = fo::nary(f.kind, std::move(kept));
            if (!(out == f)) changed = true;
            return out;
        }
        case K::Exists: {
            if (eliminate_equality(f)) changed = true;
            return f;
        }
        case K::Iff: {
            const Formula& a = f.subs[0];
            const Formula& b = f.subs[1];
            if (b.is(K::And)) {
                auto it = std::find(b.subs.begin(), b.subs.end(), a);
                if (it != b.subs.end()) {
                    std::vector<Formula> rest;
                    for (const auto& s : b.subs) {
                        if (!(s == a)) rest.push_back(s);
                    }
                    changed = true;
                    return fo::implies(a, fo::conj(std::move(rest)));
                }
            }
            return f;
        }
        default: return f;
    }
}

} // namespace detail

/// Conservative rewriting to a classically equivalent formula. Applies
/// double-negation elimination, one-point elimination of existentially
/// quantified variables where sorts allow, unit laws for conjunction and
/// disjunction, and p <-> (G & p) to p -> G; iterated to a fixpoint.
inline Formula simplify(const Formula& f) {
    Formula cur = f;
    for (;;) {
        bool    changed = false;
        Formula next    = detail::simplify_once(cur, changed);
        if (!changed || next == cur) return next;
        cur = std::move(next);
    }
}

} // namespace ncomp
