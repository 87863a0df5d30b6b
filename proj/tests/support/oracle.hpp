#pragma once

// Deliberately naive reference implementations used as test oracles. They
// share only the data types with the library.

#include <ncomp/formula.hpp>
#include <ncomp/ground.hpp>
#include <ncomp/program.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using ncomp::Formula;
using ncomp::GroundAtom;
using ncomp::Symbol;
using ncomp::Term;

using Env = std::vector<std::pair<std::string, Symbol>>;

inline std::optional<Symbol> value(const Term& t, const Env& env) {
    switch (t.kind) {
        case Term::Kind::Numeral: return Symbol::numeral(t.value);
        case Term::Kind::Constant: return Symbol::constant(t.name);
        case Term::Kind::Variable:
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                if (it->first == t.name) return it->second;
            }
            throw std::logic_error("unbound variable " + t.name);
        case Term::Kind::Binary: {
            auto a = value(t.lhs(), env), b = value(t.rhs(), env);
            if (!a || !b || !a->is_numeral() || !b->is_numeral()) return std::nullopt;
            std::int64_t x = a->value(), y = b->value();
            switch (t.op) {
                case ncomp::BinOp::Add: return Symbol::numeral(x + y);
                case ncomp::BinOp::Sub: return Symbol::numeral(x - y);
                case ncomp::BinOp::Mul: return Symbol::numeral(x * y);
            }
        }
    }
    return std::nullopt;
}

inline void constants_in(const Formula& f, std::set<std::string>& out) {
    std::function<void(const Term&)> walk = [&](const Term& t) {
        if (t.is_constant()) out.insert(t.name);
        for (const auto& o : t.ops) walk(o);
    };
    for (const auto& a : f.args) walk(a);
    for (const auto& s : f.subs) constants_in(s, out);
}

/// Textbook evaluation: integer variables range over the window, general
/// variables over the window and the constants.
class NaiveEvaluator {
public:
    NaiveEvaluator(const std::set<GroundAtom>& atoms, ncomp::IntWindow w, std::set<std::string> consts)
        : atoms_(atoms), w_(w), consts_(std::move(consts)) {
        for (const auto& a : atoms) {
            for (const auto& t : a.args) {
                if (t.is_constant()) consts_.insert(t.name());
            }
        }
    }

    bool operator()(const Formula& f) {
        std::set<std::string> extra;
        constants_in(f, extra);
        auto saved = consts_;
        consts_.insert(extra.begin(), extra.end());
        Env  env;
        bool v  = eval(f, env);
        consts_ = saved;
        return v;
    }

private:
    bool eval(const Formula& f, Env& env) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::True: return true;
            case K::False: return false;
            case K::Atom: {
                GroundAtom a{f.predicate, {}};
                for (const auto& t : f.args) a.args.push_back(*value(t, env));
                return atoms_.count(a) != 0;
            }
            case K::Compare: return ncomp::holds(f.rel, *value(f.lhs(), env), *value(f.rhs(), env));
            case K::Not: return !eval(f.body(), env);
            case K::And:
                for (const auto& s : f.subs) {
                    if (!eval(s, env)) return false;
                }
                return true;
            case K::Or:
                for (const auto& s : f.subs) {
                    if (eval(s, env)) return true;
                }
                return false;
            case K::Implies: return !eval(f.sub(0), env) || eval(f.sub(1), env);
            case K::Iff: return eval(f.sub(0), env) == eval(f.sub(1), env);
            case K::Forall:
            case K::Exists: return quantify(f, 0, env);
        }
        return false;
    }

    bool quantify(const Formula& f, std::size_t k, Env& env) {
        bool exists = f.is(Formula::Kind::Exists);
        if (k == f.vars.size()) return eval(f.body(), env);
        std::vector<Symbol> dom;
        for (auto v = w_.lo; v <= w_.hi; ++v) dom.push_back(Symbol::numeral(v));
        if (f.vars[k].sort == ncomp::Sort::General) {
            for (const auto& c : consts_) dom.push_back(Symbol::constant(c));
        }
        for (const auto& d : dom) {
            env.emplace_back(f.vars[k].name, d);
            bool r = quantify(f, k + 1, env);
            env.pop_back();
            if (r == exists) return exists;
        }
        return !exists;
    }

    const std::set<GroundAtom>& atoms_;
    ncomp::IntWindow            w_;
    std::set<std::string>       consts_;
};

struct NaiveRule {
    ncomp::Rule::Head       kind = ncomp::Rule::Head::Basic;
    std::optional<GroundAtom> head;
    std::set<GroundAtom>    pos, neg;

    friend bool operator<(const NaiveRule& a, const NaiveRule& b) {
        return std::tie(a.kind, a.head, a.pos, a.neg) < std::tie(b.kind, b.head, b.pos, b.neg);
    }
};

/// Instantiates every rule over all assignments of its variables to `dom`,
/// keeping the well-formed ones whose comparisons hold.
inline std::set<NaiveRule> naive_ground(const ncomp::Program& p, const std::vector<Symbol>& dom) {
    std::set<NaiveRule> out;
    for (const auto& r : p.rules) {
        auto vars = ncomp::rule_variables(r);
        Env  env;
        for (const auto& v : vars) env.emplace_back(v, Symbol());
        std::vector<std::size_t> idx(vars.size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < vars.size(); ++i) env[i].second = dom[idx[i]];
            bool      ok = true;
            NaiveRule g;
            g.kind       = r.head_kind;
            auto inst    = [&](const ncomp::Atom& a) -> std::optional<GroundAtom> {
                GroundAtom out{a.predicate, {}};
                for (const auto& t : a.args) {
                    auto v = value(t, env);
                    if (!v) return std::nullopt;
                    out.args.push_back(*v);
                }
                return out;
            };
            if (r.has_head()) {
                g.head = inst(r.head);
                ok     = g.head.has_value();
            }
            for (const auto& l : r.body) {
                if (!ok) break;
                if (l.is_atom()) {
                    auto a = inst(l.atom);
                    if (!a) ok = false;
                    else if (l.kind == ncomp::BodyLiteral::Kind::Positive) g.pos.insert(*a);
                    else g.neg.insert(*a);
                    continue;
                }
                auto x = value(l.cmp.lhs, env), y = value(l.cmp.rhs, env);
                if (!x || !y) {
                    ok = false;
                    continue;
                }
                if (l.cmp.is_interval()) {
                    auto z = value(l.cmp.high, env);
                    if (!z || !x->is_numeral() || !y->is_numeral() || !z->is_numeral()) ok = false;
                    else ok = y->value() <= x->value() && x->value() <= z->value();
                }
                else {
                    ok = ncomp::holds(l.cmp.rel, *x, *y);
                }
            }
            if (ok) out.insert(g);
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == dom.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return out;
}

inline bool subset(const std::set<GroundAtom>& a, const std::set<GroundAtom>& b) {
    for (const auto& x : a) {
        if (!b.count(x)) return false;
    }
    return true;
}

inline bool disjoint(const std::set<GroundAtom>& a, const std::set<GroundAtom>& b) {
    for (const auto& x : a) {
        if (b.count(x)) return false;
    }
    return true;
}

/// S is stable iff it satisfies the constraints and equals the least model of
/// the reduct, where a choice rule {a} :- B contributes a :- B when a is in S.
inline bool is_naive_stable(const std::set<NaiveRule>& g, const std::set<GroundAtom>& s) {
    for (const auto& r : g) {
        if (r.kind == ncomp::Rule::Head::None && subset(r.pos, s) && disjoint(r.neg, s)) return false;
    }
    std::set<GroundAtom> m;
    bool                 changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g) {
            if (!r.head || m.count(*r.head) || !disjoint(r.neg, s) || !subset(r.pos, m)) continue;
            if (r.kind == ncomp::Rule::Head::Choice && !s.count(*r.head)) continue;
            m.insert(*r.head);
            changed = true;
        }
    }
    return m == s;
}

/// Rules whose positive body can be derived when negation is ignored.
inline std::set<NaiveRule> relevant(const std::set<NaiveRule>& g) {
    std::set<GroundAtom> possible;
    bool                 changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g) {
            if (r.head && !possible.count(*r.head) && subset(r.pos, possible)) {
                possible.insert(*r.head);
                changed = true;
            }
        }
    }
    std::set<NaiveRule> out;
    for (const auto& r : g) {
        if (subset(r.pos, possible)) out.insert(r);
    }
    return out;
}

/// Stable models of a ground program by checking every subset of the head
/// atoms against the reduct.
inline std::set<std::set<GroundAtom>> naive_stable_models(const std::set<NaiveRule>& all, std::size_t max_heads = 22) {
    std::set<NaiveRule> g = relevant(all);
    std::vector<GroundAtom> heads;
    {
        std::set<GroundAtom> hs;
        for (const auto& r : g) {
            if (r.head) hs.insert(*r.head);
        }
        heads.assign(hs.begin(), hs.end());
    }
    if (heads.size() > max_heads) throw std::runtime_error("too many head atoms for the naive oracle");
    std::set<std::set<GroundAtom>> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << heads.size()); ++bits) {
        std::set<GroundAtom> s;
        for (std::size_t i = 0; i < heads.size(); ++i) {
            if (bits >> i & 1) s.insert(heads[i]);
        }
        if (is_naive_stable(g, s)) out.insert(s);
    }
    return out;
}

inline std::vector<Symbol> domain(std::int64_t lo, std::int64_t hi, const std::set<std::string>& consts) {
    std::vector<Symbol> out;
    for (auto v = lo; v <= hi; ++v) out.push_back(Symbol::numeral(v));
    for (const auto& c : consts) out.push_back(Symbol::constant(c));
    return out;
}

} // namespace oracle
