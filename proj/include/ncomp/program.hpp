#pragma once

#include "formula.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace ncomp {

/// p(t1,...,tn) where each ti is a symbolic constant or a regular term.
struct Atom {
    std::string       predicate;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Either `lhs rel rhs` or the interval membership `lhs = low..high`.
struct Comparison {
    enum class Kind : std::uint8_t { Relational, Interval };

    Kind kind = Kind::Relational;
    Term lhs;
    Rel  rel = Rel::Eq;
    Term rhs;  // right side, or the lower bound of an interval
    Term high; // upper bound of an interval

    static Comparison relational(Term l, Rel r, Term rhs) {
        Comparison c;
        c.lhs = std::move(l);
        c.rel = r;
        c.rhs = std::move(rhs);
        return c;
    }
    static Comparison interval(Term t, Term lo, Term hi) {
        Comparison c;
        c.kind = Kind::Interval;
        c.lhs  = std::move(t);
        c.rhs  = std::move(lo);
        c.high = std::move(hi);
        return c;
    }
    bool        is_interval() const { return kind == Kind::Interval; }
    const Term& low() const { return rhs; }

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct BodyLiteral {
    enum class Kind : std::uint8_t { Positive, Negated, Comparison };

    Kind       kind = Kind::Positive;
    Atom       atom;
    Comparison cmp;

    static BodyLiteral positive(Atom a) { return {Kind::Positive, std::move(a), {}}; }
    static BodyLiteral negated(Atom a) { return {Kind::Negated, std::move(a), {}}; }
    static BodyLiteral comparison(Comparison c) { return {Kind::Comparison, {}, std::move(c)}; }

    bool is_atom() const { return kind != Kind::Comparison; }

    friend bool operator==(const BodyLiteral&, const BodyLiteral&) = default;
};

struct Rule {
    enum class Head : std::uint8_t { Basic, Choice, None };

    Head                     head_kind = Head::None;
    Atom                     head;
    std::vector<BodyLiteral> body;

    static Rule basic(Atom h, std::vector<BodyLiteral> b = {}) { return {Head::Basic, std::move(h), std::move(b)}; }
    static Rule choice(Atom h, std::vector<BodyLiteral> b = {}) { return {Head::Choice, std::move(h), std::move(b)}; }
    static Rule constraint(std::vector<BodyLiteral> b) { return {Head::None, {}, std::move(b)}; }

    bool has_head() const { return head_kind != Head::None; }
    bool is_choice() const { return head_kind == Head::Choice; }
    bool is_constraint() const { return head_kind == Head::None; }

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct Program {
    std::vector<Rule> rules;

    bool empty() const { return rules.empty(); }
    friend bool operator==(const Program&, const Program&) = default;
};

struct PredicateSymbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const PredicateSymbol&, const PredicateSymbol&) = default;
    friend auto operator<=>(const PredicateSymbol&, const PredicateSymbol&) = default;
};

inline std::string to_string(const PredicateSymbol& p) { return p.name + "/" + std::to_string(p.arity); }

inline PredicateSymbol signature(const Atom& a) { return {a.predicate, a.args.size()}; }

template <typename F>
void for_each_atom(const Rule& r, F&& f) {
    if (r.has_head()) f(r.head);
    for (const auto& l : r.body) {
        if (l.is_atom()) f(l.atom);
    }
}

template <typename F>
void for_each_term(const Rule& r, F&& f) {
    if (r.has_head()) {
        for (const auto& t : r.head.args) f(t);
    }
    for (const auto& l : r.body) {
        if (l.is_atom()) {
            for (const auto& t : l.atom.args) f(t);
        }
        else {
            f(l.cmp.lhs);
            f(l.cmp.rhs);
            if (l.cmp.is_interval()) f(l.cmp.high);
        }
    }
}

/// Predicate symbols occurring in the program, in order of first occurrence.
inline std::vector<PredicateSymbol> predicate_symbols(const Program& p) {
    std::vector<PredicateSymbol> out;
    std::set<PredicateSymbol>    seen;
    for (const auto& r : p.rules) {
        for_each_atom(r, [&](const Atom& a) {
            if (seen.insert(signature(a)).second) out.push_back(signature(a));
        });
    }
    return out;
}

/// Variable names of a rule, in order of first occurrence (head first).
inline std::vector<std::string> rule_variables(const Rule& r) {
    std::vector<std::string> out;
    for_each_term(r, [&](const Term& t) {
        for_each_variable(t, [&](const Term& v) {
            if (std::find(out.begin(), out.end(), v.name) == out.end()) out.push_back(v.name);
        });
    });
    return out;
}

inline std::set<std::string> program_variable_names(const Program& p) {
    std::set<std::string> out;
    for (const auto& r : p.rules) {
        for (auto& v : rule_variables(r)) out.insert(v);
    }
    return out;
}

namespace detail {
inline void collect_symbols(const Term& t, std::set<std::int64_t>& nums, std::set<std::string>& consts) {
    if (t.is_numeral()) nums.insert(t.value);
    if (t.is_constant()) consts.insert(t.name);
    for (const auto& o : t.ops) collect_symbols(o, nums, consts);
}
} // namespace detail

inline std::set<std::int64_t> program_numerals(const Program& p) {
    std::set<std::int64_t> nums;
    std::set<std::string>  consts;
    for (const auto& r : p.rules) for_each_term(r, [&](const Term& t) { detail::collect_symbols(t, nums, consts); });
    return nums;
}

inline std::set<std::string> program_constants(const Program& p) {
    std::set<std::int64_t> nums;
    std::set<std::string>  consts;
    for (const auto& r : p.rules) for_each_term(r, [&](const Term& t) { detail::collect_symbols(t, nums, consts); });
    return consts;
}

namespace detail {
inline bool rename_equal(const Term& a, const Term& b, std::vector<std::pair<std::string, std::string>>& m) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Numeral: return a.value == b.value;
        case Term::Kind::Constant: return a.name == b.name;
        case Term::Kind::Variable:
            for (const auto& [x, y] : m) {
                if (x == a.name || y == b.name) return x == a.name && y == b.name;
            }
            m.emplace_back(a.name, b.name);
            return true;
        case Term::Kind::Binary:
            return a.op == b.op && rename_equal(a.lhs(), b.lhs(), m) && rename_equal(a.rhs(), b.rhs(), m);
    }
    return false;
}
inline bool rename_equal(const Atom& a, const Atom& b, std::vector<std::pair<std::string, std::string>>& m) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!rename_equal(a.args[i], b.args[i], m)) return false;
    }
    return true;
}
} // namespace detail

/// Equality of rules up to a bijective renaming of variables.
inline bool equal_up_to_renaming(const Rule& a, const Rule& b) {
    if (a.head_kind != b.head_kind || a.body.size() != b.body.size()) return false;
    std::vector<std::pair<std::string, std::string>> m;
    if (a.has_head() && !detail::rename_equal(a.head, b.head, m)) return false;
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        const auto& x = a.body[i];
        const auto& y = b.body[i];
        if (x.kind != y.kind) return false;
        if (x.is_atom()) {
            if (!detail::rename_equal(x.atom, y.atom, m)) return false;
            continue;
        }
        if (x.cmp.kind != y.cmp.kind || x.cmp.rel != y.cmp.rel) return false;
        if (!detail::rename_equal(x.cmp.lhs, y.cmp.lhs, m) || !detail::rename_equal(x.cmp.rhs, y.cmp.rhs, m)) return false;
        if (x.cmp.is_interval() && !detail::rename_equal(x.cmp.high, y.cmp.high, m)) return false;
    }
    return true;
}

inline bool equal_up_to_renaming(const Program& a, const Program& b) {
    if (a.rules.size() != b.rules.size()) return false;
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        if (!equal_up_to_renaming(a.rules[i], b.rules[i])) return false;
    }
    return true;
}

} // namespace ncomp
