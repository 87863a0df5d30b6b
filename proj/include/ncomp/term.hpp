#pragma once

#include "symbol.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncomp {

/// Sorts of the two-sorted signature. Integer is a subsort of general.
enum class Sort : std::uint8_t { General, Integer };

inline const char* to_string(Sort s) { return s == Sort::Integer ? "integer" : "general"; }

/// True if a term of sort `actual` may appear where `required` is expected.
inline bool admits(Sort required, Sort actual) { return required == Sort::General || actual == Sort::Integer; }

struct Var {
    std::string name;
    Sort        sort = Sort::General;

    friend bool operator==(const Var&, const Var&) = default;
    friend auto operator<=>(const Var&, const Var&) = default;
};

/// Sort suggested by a variable name: I..N integer, anything else general.
inline Sort conventional_sort(const std::string& name) {
    return !name.empty() && name[0] >= 'I' && name[0] <= 'N' ? Sort::Integer : Sort::General;
}

enum class BinOp : std::uint8_t { Add, Sub, Mul };

inline const char* to_string(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
    }
    return "?";
}

/// Integer arithmetic with overflow detection.
inline std::optional<std::int64_t> apply(BinOp op, std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    bool         overflow = false;
    switch (op) {
        case BinOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
        case BinOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
        case BinOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
    }
    if (overflow) return std::nullopt;
    return r;
}

/// Terms shared by rules and formulas.
///
/// In a rule, variables are general and symbolic constants only occur as
/// whole arguments of atoms and comparisons. In a formula, variables carry
/// their sort.
struct Term {
    enum class Kind : std::uint8_t { Numeral, Constant, Variable, Binary };

    Kind              kind  = Kind::Numeral;
    std::int64_t      value = 0;
    std::string       name;
    Sort              sort = Sort::General;
    BinOp             op   = BinOp::Add;
    std::vector<Term> ops;

    static Term numeral(std::int64_t n) {
        Term t;
        t.kind  = Kind::Numeral;
        t.value = n;
        return t;
    }
    static Term constant(std::string c) {
        Term t;
        t.kind = Kind::Constant;
        t.name = std::move(c);
        return t;
    }
    static Term variable(std::string n, Sort s = Sort::General) {
        Term t;
        t.kind = Kind::Variable;
        t.name = std::move(n);
        t.sort = s;
        return t;
    }
    static Term variable(const Var& v) { return variable(v.name, v.sort); }
    static Term binary(BinOp op, Term l, Term r) {
        Term t;
        t.kind = Kind::Binary;
        t.op   = op;
        t.ops.reserve(2);
        t.ops.push_back(std::move(l));
        t.ops.push_back(std::move(r));
        return t;
    }
    static Term of(const Symbol& s) { return s.is_numeral() ? numeral(s.value()) : constant(s.name()); }

    bool is_numeral() const { return kind == Kind::Numeral; }
    bool is_constant() const { return kind == Kind::Constant; }
    bool is_variable() const { return kind == Kind::Variable; }
    bool is_binary() const { return kind == Kind::Binary; }
    Var  var() const { return Var{name, sort}; }

    const Term& lhs() const { return ops[0]; }
    const Term& rhs() const { return ops[1]; }

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sort of a term, assuming it is well-sorted.
inline Sort sort_of(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Numeral: return Sort::Integer;
        case Term::Kind::Constant: return Sort::General;
        case Term::Kind::Variable: return t.sort;
        case Term::Kind::Binary: return Sort::Integer;
    }
    return Sort::General;
}

/// True if the term is built from numerals and variables with + - * only.
inline bool is_regular(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Numeral:
        case Term::Kind::Variable: return true;
        case Term::Kind::Constant: return false;
        case Term::Kind::Binary: return is_regular(t.lhs()) && is_regular(t.rhs());
    }
    return false;
}

template <typename F>
void for_each_variable(const Term& t, F&& f) {
    if (t.is_variable()) {
        f(t);
    }
    for (const auto& o : t.ops) {
        for_each_variable(o, f);
    }
}

inline bool occurs_in(const std::string& name, const Term& t) {
    bool found = false;
    for_each_variable(t, [&](const Term& v) { found = found || v.name == name; });
    return found;
}

/// Ground value of a term under no variables; nullopt if arithmetic is
/// applied to a symbolic constant or overflows.
template <typename Lookup>
std::optional<Symbol> evaluate(const Term& t, Lookup&& lookup) {
    switch (t.kind) {
        case Term::Kind::Numeral: return Symbol::numeral(t.value);
        case Term::Kind::Constant: return Symbol::constant(t.name);
        case Term::Kind::Variable: return lookup(t);
        case Term::Kind::Binary: {
            auto l = evaluate(t.lhs(), lookup);
            if (!l || !l->is_numeral()) return std::nullopt;
            auto r = evaluate(t.rhs(), lookup);
            if (!r || !r->is_numeral()) return std::nullopt;
            auto v = apply(t.op, l->value(), r->value());
            if (!v) return std::nullopt;
            return Symbol::numeral(*v);
        }
    }
    return std::nullopt;
}

} // namespace ncomp
