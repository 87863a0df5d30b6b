#pragma once

#include "completion.hpp"

#include <string>
#include <vector>

namespace ncomp {

namespace detail {

inline Term general_term(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Variable: return Term::variable(t.name, Sort::General);
        case Term::Kind::Binary: return Term::binary(t.op, general_term(t.lhs()), general_term(t.rhs()));
        default: return t;
    }
}

inline void check_capture(const Term& t, const Var& z) {
    if (occurs_in(z.name, t)) throw VariableCapture("variable " + z.name + " occurs in " + print_term(t, true));
}

} // namespace detail

/// val_t(Z): Z is a value of the program term t. Program variables in t are
/// general; auxiliary integer variables come from `names`.
inline Formula val(const Term& t, const Var& z, NameSupply& names) {
    detail::check_capture(t, z);
    if (!t.is_binary()) return fo::eq(Term::variable(z), detail::general_term(t));
    Var i = names.fresh("I", Sort::Integer);
    Var j = names.fresh("J", Sort::Integer);
    return fo::exists({i, j}, fo::conj({fo::eq(Term::variable(z), Term::binary(t.op, Term::variable(i), Term::variable(j))),
                                        val(t.lhs(), i, names), val(t.rhs(), j, names)}));
}

/// val_{lo..hi}(Z) for an interval term.
inline Formula val_interval(const Term& lo, const Term& hi, const Var& z, NameSupply& names) {
    detail::check_capture(lo, z);
    detail::check_capture(hi, z);
    Var i = names.fresh("I", Sort::Integer);
    Var j = names.fresh("J", Sort::Integer);
    Var k = names.fresh("K", Sort::Integer);
    Term ti = Term::variable(i), tj = Term::variable(j), tk = Term::variable(k);
    return fo::exists({i, j, k}, fo::conj({val(lo, i, names), val(hi, j, names), fo::compare(ti, Rel::Le, tk),
                                           fo::compare(tk, Rel::Le, tj), fo::eq(Term::variable(z), tk)}));
}

/// τ^B of one body literal.
inline Formula tau_b(const BodyLiteral& l, NameSupply& names) {
    if (l.is_atom()) {
        std::vector<Var>     zs;
        std::vector<Formula> parts;
        std::vector<Term>    args;
        for (const auto& t : l.atom.args) {
            zs.push_back(names.fresh("Z", Sort::General));
            parts.push_back(val(t, zs.back(), names));
            args.push_back(Term::variable(zs.back()));
        }
        Formula a = fo::atom(l.atom.predicate, std::move(args));
        parts.push_back(l.kind == BodyLiteral::Kind::Negated ? fo::neg(std::move(a)) : std::move(a));
        return fo::exists(std::move(zs), fo::conj(std::move(parts)));
    }
    const auto& c  = l.cmp;
    Var         z1 = names.fresh("Z", Sort::General);
    Var         z2 = names.fresh("Z", Sort::General);
    Formula     v1 = val(c.lhs, z1, names);
    Formula     v2 = c.is_interval() ? val_interval(c.low(), c.high, z2, names) : val(c.rhs, z2, names);
    Rel         r  = c.is_interval() ? Rel::Eq : c.rel;
    return fo::exists({z1, z2}, fo::conj({std::move(v1), std::move(v2), fo::compare(Term::variable(z1), r, Term::variable(z2))}));
}

/// τ^B of a rule body: the conjunction of the translated literals.
inline Formula tau_b(const std::vector<BodyLiteral>& body, NameSupply& names) {
    std::vector<Formula> parts;
    for (const auto& l : body) parts.push_back(tau_b(l, names));
    return fo::conj(std::move(parts));
}

namespace detail {
inline std::vector<Var> general_rule_variables(const Rule& r) {
    std::vector<Var> out;
    for (auto& n : rule_variables(r)) out.push_back(Var{n, Sort::General});
    return out;
}
} // namespace detail

/// The completed definition of `sym` built from val and τ^B; each disjunct
/// quantifies all variables of its rule.
inline Formula comp_completed_definition(const Program& p, const PredicateSymbol& sym) {
    if (!occurs_in(p, sym)) throw UnknownPredicate("predicate " + to_string(sym) + " does not occur in the program");
    NameSupply       outer(program_variable_names(p));
    std::vector<Var> vs;
    std::vector<Term> vts;
    for (std::size_t i = 0; i < sym.arity; ++i) {
        vs.push_back(outer.fresh("V", Sort::General));
        vts.push_back(Term::variable(vs.back()));
    }
    Formula              head = fo::atom(sym.name, vts);
    std::vector<Formula> alternatives;
    for (const auto& r : p.rules) {
        if (!defines(r, sym)) continue;
        NameSupply local(program_variable_names(p));
        for (const auto& v : vs) local.reserve(v.name);
        std::vector<Formula> parts;
        if (!r.body.empty()) parts.push_back(tau_b(r.body, local));
        for (std::size_t i = 0; i < sym.arity; ++i) parts.push_back(val(r.head.args[i], vs[i], local));
        if (r.is_choice()) parts.push_back(head);
        alternatives.push_back(fo::exists(detail::general_rule_variables(r), fo::conj(std::move(parts))));
    }
    return fo::forall(vs, fo::iff(head, fo::disj(std::move(alternatives))));
}

/// COMP: completed definitions in order of first occurrence, then the
/// universal closure of ¬τ^B(Body) for each constraint.
inline std::vector<Formula> comp(const Program& p) {
    std::vector<Formula> out;
    for (const auto& sym : predicate_symbols(p)) out.push_back(comp_completed_definition(p, sym));
    for (const auto& r : p.rules) {
        if (!r.is_constraint()) continue;
        NameSupply names(program_variable_names(p));
        out.push_back(fo::forall(detail::general_rule_variables(r), fo::neg(tau_b(r.body, names))));
    }
    return out;
}

} // namespace ncomp
