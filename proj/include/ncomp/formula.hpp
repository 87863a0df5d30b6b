#pragma once

#include "term.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ncomp {

enum class Rel : std::uint8_t { Eq, Ne, Lt, Gt, Le, Ge };

inline const char* to_string(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
        case Rel::Lt: return "<";
        case Rel::Gt: return ">";
        case Rel::Le: return "<=";
        case Rel::Ge: return ">=";
    }
    return "?";
}

/// Complement of a relation under a total order.
inline Rel negate(Rel r) {
    switch (r) {
        case Rel::Eq: return Rel::Ne;
        case Rel::Ne: return Rel::Eq;
        case Rel::Lt: return Rel::Ge;
        case Rel::Gt: return Rel::Le;
        case Rel::Le: return Rel::Gt;
        case Rel::Ge: return Rel::Lt;
    }
    return r;
}

/// Relation with its arguments swapped: a r b iff b mirror(r) a.
inline Rel mirror(Rel r) {
    switch (r) {
        case Rel::Lt: return Rel::Gt;
        case Rel::Gt: return Rel::Lt;
        case Rel::Le: return Rel::Ge;
        case Rel::Ge: return Rel::Le;
        default: return r;
    }
}

inline bool holds(Rel r, const Symbol& a, const Symbol& b) {
    auto c = compare_precomputed(a, b);
    switch (r) {
        case Rel::Eq: return c == 0;
        case Rel::Ne: return c != 0;
        case Rel::Lt: return c < 0;
        case Rel::Gt: return c > 0;
        case Rel::Le: return c <= 0;
        case Rel::Ge: return c >= 0;
    }
    return false;
}

/// Formulas over the two-sorted signature.
///
/// `And`/`Or` are n-ary; the builders below keep them flat and collapse the
/// empty and singleton cases. Quantifiers bind a list of sorted variables.
struct Formula {
    enum class Kind : std::uint8_t { True, False, Atom, Compare, Not, And, Or, Implies, Iff, Forall, Exists };

    Kind                 kind = Kind::True;
    std::string          predicate;
    std::vector<Term>    args; // atom arguments, or {lhs, rhs} of a comparison
    Rel                  rel = Rel::Eq;
    std::vector<Formula> subs;
    std::vector<Var>     vars;

    bool is(Kind k) const { return kind == k; }
    bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }

    const Formula& sub(std::size_t i = 0) const { return subs[i]; }
    const Formula& body() const { return subs[0]; }
    const Term&    lhs() const { return args[0]; }
    const Term&    rhs() const { return args[1]; }

    friend bool operator==(const Formula&, const Formula&) = default;
};

namespace fo {

inline Formula top() { return Formula{}; }
inline Formula bottom() {
    Formula f;
    f.kind = Formula::Kind::False;
    return f;
}
inline Formula atom(std::string p, std::vector<Term> args = {}) {
    Formula f;
    f.kind      = Formula::Kind::Atom;
    f.predicate = std::move(p);
    f.args      = std::move(args);
    return f;
}
inline Formula compare(Term l, Rel r, Term rhs) {
    Formula f;
    f.kind = Formula::Kind::Compare;
    f.rel  = r;
    f.args.push_back(std::move(l));
    f.args.push_back(std::move(rhs));
    return f;
}
inline Formula eq(Term l, Term r) { return compare(std::move(l), Rel::Eq, std::move(r)); }
inline Formula neg(Formula g) {
    Formula f;
    f.kind = Formula::Kind::Not;
    f.subs.push_back(std::move(g));
    return f;
}
inline Formula nary(Formula::Kind k, std::vector<Formula> parts) {
    std::vector<Formula> flat;
    for (auto& p : parts) {
        if (p.kind == k) {
            for (auto& q : p.subs) flat.push_back(std::move(q));
        }
        else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) return k == Formula::Kind::And ? top() : bottom();
    if (flat.size() == 1) return std::move(flat.front());
    Formula f;
    f.kind = k;
    f.subs = std::move(flat);
    return f;
}
inline Formula conj(std::vector<Formula> parts) { return nary(Formula::Kind::And, std::move(parts)); }
inline Formula disj(std::vector<Formula> parts) { return nary(Formula::Kind::Or, std::move(parts)); }
inline Formula implies(Formula a, Formula b) {
    Formula f;
    f.kind = Formula::Kind::Implies;
    f.subs.push_back(std::move(a));
    f.subs.push_back(std::move(b));
    return f;
}
inline Formula iff(Formula a, Formula b) {
    Formula f;
    f.kind = Formula::Kind::Iff;
    f.subs.push_back(std::move(a));
    f.subs.push_back(std::move(b));
    return f;
}
inline Formula quantify(Formula::Kind k, std::vector<Var> vars, Formula body) {
    if (vars.empty()) return body;
    Formula f;
    f.kind = k;
    f.vars = std::move(vars);
    f.subs.push_back(std::move(body));
    return f;
}
inline Formula forall(std::vector<Var> vars, Formula body) {
    return quantify(Formula::Kind::Forall, std::move(vars), std::move(body));
}
inline Formula exists(std::vector<Var> vars, Formula body) {
    return quantify(Formula::Kind::Exists, std::move(vars), std::move(body));
}

} // namespace fo

namespace detail {
inline void push_unique(std::vector<Var>& out, const Var& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}
inline void collect_free(const Formula& f, std::vector<Var>& bound, std::vector<Var>& out) {
    auto visit_term = [&](const Term& t) {
        for_each_variable(t, [&](const Term& v) {
            Var var = v.var();
            if (std::find(bound.begin(), bound.end(), var) == bound.end()) push_unique(out, var);
        });
    };
    for (const auto& a : f.args) visit_term(a);
    if (f.is_quantifier()) {
        auto mark = bound.size();
        bound.insert(bound.end(), f.vars.begin(), f.vars.end());
        collect_free(f.body(), bound, out);
        bound.resize(mark);
        return;
    }
    for (const auto& s : f.subs) collect_free(s, bound, out);
}
} // namespace detail

/// Free variables in order of first occurrence.
inline std::vector<Var> free_variables_ordered(const Formula& f) {
    std::vector<Var> bound, out;
    detail::collect_free(f, bound, out);
    return out;
}

inline std::set<Var> free_variables(const Formula& f) {
    auto v = free_variables_ordered(f);
    return {v.begin(), v.end()};
}

inline bool is_sentence(const Formula& f) { return free_variables_ordered(f).empty(); }

inline Formula universal_closure(Formula f) {
    auto vars = free_variables_ordered(f);
    return fo::forall(std::move(vars), std::move(f));
}

/// All variable names occurring in f, free or bound.
inline void collect_variable_names(const Formula& f, std::unordered_set<std::string>& out) {
    for (const auto& a : f.args) for_each_variable(a, [&](const Term& v) { out.insert(v.name); });
    for (const auto& v : f.vars) out.insert(v.name);
    for (const auto& s : f.subs) collect_variable_names(s, out);
}

inline Term substitute(const Term& t, const Var& x, const Term& by) {
    if (t.is_variable()) return t.var() == x ? by : t;
    if (!t.is_binary()) return t;
    return Term::binary(t.op, substitute(t.lhs(), x, by), substitute(t.rhs(), x, by));
}

/// Capture-avoiding substitution of `by` for the free occurrences of `x`.
inline Formula substitute(const Formula& f, const Var& x, const Term& by) {
    Formula out = f;
    for (auto& a : out.args) a = substitute(a, x, by);
    if (f.is_quantifier()) {
        if (std::find(f.vars.begin(), f.vars.end(), x) != f.vars.end()) return f;
        std::unordered_set<std::string> clash;
        for_each_variable(by, [&](const Term& v) { clash.insert(v.name); });
        Formula body = f.body();
        for (auto& v : out.vars) {
            if (!clash.count(v.name)) continue;
            std::unordered_set<std::string> used;
            collect_variable_names(f, used);
            used.insert(clash.begin(), clash.end());
            std::string fresh = v.name;
            for (int i = 1; used.count(fresh); ++i) fresh = v.name + "_" + std::to_string(i);
            Var renamed{fresh, v.sort};
            body = substitute(body, v, Term::variable(renamed));
            v    = renamed;
        }
        out.subs[0] = substitute(body, x, by);
        return out;
    }
    for (auto& s : out.subs) s = substitute(s, x, by);
    return out;
}

namespace detail {
using Bindings = std::vector<std::pair<Var, Var>>;

inline bool alpha_term(const Term& a, const Term& b, const Bindings& env) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Numeral: return a.value == b.value;
        case Term::Kind::Constant: return a.name == b.name;
        case Term::Kind::Variable: {
            Var va = a.var(), vb = b.var();
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                bool la = it->first == va, lb = it->second == vb;
                if (la || lb) return la && lb;
            }
            return va == vb;
        }
        case Term::Kind::Binary:
            return a.op == b.op && alpha_term(a.lhs(), b.lhs(), env) && alpha_term(a.rhs(), b.rhs(), env);
    }
    return false;
}

inline Formula flatten(const Formula& f) {
    Formula out = f;
    for (auto& s : out.subs) s = flatten(s);
    if (f.is(Formula::Kind::And) || f.is(Formula::Kind::Or)) return fo::nary(f.kind, std::move(out.subs));
    return out;
}

inline bool alpha(const Formula& a, const Formula& b, Bindings& env) {
    if (a.kind != b.kind) return false;
    using K = Formula::Kind;
    switch (a.kind) {
        case K::True:
        case K::False: return true;
        case K::Atom:
            if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (!alpha_term(a.args[i], b.args[i], env)) return false;
            }
            return true;
        case K::Compare: {
            if (a.rel == b.rel && alpha_term(a.lhs(), b.lhs(), env) && alpha_term(a.rhs(), b.rhs(), env)) return true;
            // t1 = t2 and t2 = t1 are the same statement; likewise for != and mirrored orders.
            return a.rel == mirror(b.rel) && alpha_term(a.lhs(), b.rhs(), env) && alpha_term(a.rhs(), b.lhs(), env);
        }
        case K::Forall:
        case K::Exists: {
            if (a.vars.size() != b.vars.size()) return false;
            auto mark = env.size();
            for (std::size_t i = 0; i < a.vars.size(); ++i) {
                if (a.vars[i].sort != b.vars[i].sort) return false;
                env.emplace_back(a.vars[i], b.vars[i]);
            }
            bool ok = alpha(a.body(), b.body(), env);
            env.resize(mark);
            return ok;
        }
        default:
            if (a.subs.size() != b.subs.size()) return false;
            for (std::size_t i = 0; i < a.subs.size(); ++i) {
                if (!alpha(a.subs[i], b.subs[i], env)) return false;
            }
            return true;
    }
}
} // namespace detail

/// Structural equality up to renaming of bound variables, flattening of
/// nested conjunctions/disjunctions and orientation of comparisons.
inline bool alpha_equivalent(const Formula& a, const Formula& b) {
    detail::Bindings env;
    return detail::alpha(detail::flatten(a), detail::flatten(b), env);
}

} // namespace ncomp
