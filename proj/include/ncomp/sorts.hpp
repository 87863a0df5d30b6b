#pragma once

#include "error.hpp"
#include "printer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ncomp {

namespace detail {

struct SortChecker {
    std::vector<Var>         bound;
    std::vector<std::string> path;

    std::string where(const std::string& what) const {
        std::string out;
        for (const auto& p : path) out += p + " > ";
        return out + what;
    }

    std::optional<std::string> term(const Term& t, bool under_arithmetic) {
        switch (t.kind) {
            case Term::Kind::Numeral: return std::nullopt;
            case Term::Kind::Constant:
                if (under_arithmetic) return where("symbolic constant '" + t.name + "' under arithmetic");
                return std::nullopt;
            case Term::Kind::Variable:
                for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
                    if (it->name == t.name && it->sort != t.sort) {
                        return where("variable " + t.name + " used as " + to_string(t.sort) + " but bound as " +
                                     to_string(it->sort));
                    }
                    if (it->name == t.name) break;
                }
                if (under_arithmetic && t.sort != Sort::Integer) {
                    return where("general variable " + t.name + " under arithmetic");
                }
                return std::nullopt;
            case Term::Kind::Binary:
                for (const auto& o : t.ops) {
                    if (auto e = term(o, true)) return e;
                }
                return std::nullopt;
        }
        return std::nullopt;
    }

    std::optional<std::string> formula(const Formula& f) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::True:
            case K::False: return std::nullopt;
            case K::Atom:
            case K::Compare: {
                path.push_back(print_formula(f, Style::Ascii));
                for (const auto& a : f.args) {
                    if (auto e = term(a, false)) return e;
                }
                path.pop_back();
                return std::nullopt;
            }
            case K::Forall:
            case K::Exists: {
                for (const auto& v : f.vars) {
                    for (const auto& b : bound) {
                        if (b.name == v.name) return where("variable " + v.name + " bound twice");
                    }
                }
                std::string q = f.is(K::Forall) ? "forall" : "exists";
                for (const auto& v : f.vars) q += " " + v.name;
                path.push_back(q);
                auto mark = bound.size();
                bound.insert(bound.end(), f.vars.begin(), f.vars.end());
                if (auto e = formula(f.body())) return e;
                bound.resize(mark);
                path.pop_back();
                return std::nullopt;
            }
            default:
                for (std::size_t i = 0; i < f.subs.size(); ++i) {
                    path.push_back("operand " + std::to_string(i + 1));
                    if (auto e = formula(f.subs[i])) return e;
                    path.pop_back();
                }
                return std::nullopt;
        }
    }
};

} // namespace detail

/// Checks the signature discipline: arithmetic operands are integer-sorted,
/// no variable is rebound along a quantifier path, and occurrences agree with
/// the sort of their binder. Returns the first violation, if any.
inline std::optional<SortError> check_sorts(const Formula& f) {
    detail::SortChecker c;
    if (auto e = c.formula(f)) return SortError(*e);
    return std::nullopt;
}

} // namespace ncomp
