#pragma once

#include "comp.hpp"
#include "completion.hpp"
#include "ground.hpp"
#include "solve.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace ncomp {

/// The interpretation S-up induced by a set of ground atoms, finitized: the
/// integer universe is the window's numerals and the general universe adds
/// a finite set of symbolic constants. Every precomputed term denotes
/// itself; arithmetic and comparisons are the standard ones.
class Interpretation {
public:
    Interpretation() = default;
    Interpretation(IntWindow w, std::set<std::string> consts, std::set<GroundAtom> atoms)
        : window_(w), constants_(std::move(consts)), atoms_(std::move(atoms)) {
        for (const auto& a : atoms_) {
            extents_[{a.predicate, a.args.size()}].push_back(a.args);
            members_.insert(a);
        }
    }

    const IntWindow&             window() const { return window_; }
    const std::set<std::string>& constants() const { return constants_; }
    const std::set<GroundAtom>&  atoms() const { return atoms_; }

    bool holds(const GroundAtom& a) const { return members_.count(a) != 0; }

    const std::vector<std::vector<Symbol>>& extent(const std::string& pred, std::size_t arity) const {
        static const std::vector<std::vector<Symbol>> none;
        auto it = extents_.find({pred, arity});
        return it == extents_.end() ? none : it->second;
    }

    /// Tuples of p/n in the interpretation, sorted.
    std::vector<std::vector<Symbol>> tuples(const std::string& pred, std::size_t arity) const {
        auto out = extent(pred, arity);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    IntWindow                                                                window_;
    std::set<std::string>                                                    constants_;
    std::set<GroundAtom>                                                     atoms_;
    std::unordered_set<GroundAtom, GroundAtomHash>                           members_;
    std::map<std::pair<std::string, std::size_t>, std::vector<std::vector<Symbol>>> extents_;
};

inline Interpretation lift(const std::set<GroundAtom>& s, IntWindow w, const std::set<std::string>& consts) {
    for (const auto& a : s) {
        for (const auto& t : a.args) {
            if (t.is_numeral() && !w.contains(t.value())) {
                throw AtomOutsideUniverse("atom " + to_string(a) + " mentions " + to_string(t) + " outside the window " +
                                          to_string(w));
            }
            if (t.is_constant() && !consts.count(t.name())) {
                throw AtomOutsideUniverse("atom " + to_string(a) + " mentions undeclared constant " + t.name());
            }
        }
    }
    return Interpretation(w, consts, s);
}

inline Interpretation lift(const StableModel& s, IntWindow w, const std::set<std::string>& consts) {
    return lift(std::set<GroundAtom>(s.begin(), s.end()), w, consts);
}

/// Smallest window containing `w` and every numeral in `atoms`.
inline IntWindow hull(IntWindow w, const std::set<GroundAtom>& atoms) {
    for (const auto& a : atoms) {
        for (const auto& t : a.args) {
            if (!t.is_numeral()) continue;
            w.lo = std::min(w.lo, t.value());
            w.hi = std::max(w.hi, t.value());
        }
    }
    return w;
}

inline std::set<std::string> atom_constants(const std::set<GroundAtom>& atoms) {
    std::set<std::string> out;
    for (const auto& a : atoms) {
        for (const auto& t : a.args) {
            if (t.is_constant()) out.insert(t.name());
        }
    }
    return out;
}

struct EvalResult {
    bool value    = false;
    bool boundary = false; // some value outside the integer window was used

    friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

namespace detail {

// Formula in negation normal form over numbered variable slots.
struct Node {
    enum class Kind : std::uint8_t { True, False, Atom, Cmp, And, Or, Exists, NotExists };

    struct Alt {
        std::vector<int>  slots;
        std::vector<Node> conj;
    };

    Kind               kind     = Kind::True;
    bool               positive = true;
    std::string        predicate;
    std::vector<CTerm> args;
    Rel                rel = Rel::Eq;
    std::vector<Node>  subs;
    std::vector<Alt>   alts; // quantifier body as a disjunction of conjunctions
    std::vector<int>   free; // slots bound outside the node
};

inline void free_slots(const Node& n, std::vector<int>& out) {
    for (const auto& a : n.args) slots_of(a, out);
    for (const auto& s : n.subs) {
        for (int x : s.free) {
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
    }
    for (const auto& alt : n.alts) {
        for (const auto& c : alt.conj) {
            for (int x : c.free) {
                if (std::find(alt.slots.begin(), alt.slots.end(), x) == alt.slots.end() &&
                    std::find(out.begin(), out.end(), x) == out.end()) {
                    out.push_back(x);
                }
            }
        }
    }
}

class FormulaCompiler {
public:
    std::vector<Sort>        sorts;
    std::vector<std::string> names;
    std::set<std::string>    constants;

    Node compile(const Formula& f) {
        Node n = nnf(f, true);
        if (!n.free.empty()) {
            throw FreeVariableError("formula has free variable " + names[static_cast<std::size_t>(n.free.front())] + ": " +
                                    print_formula(f, Style::Ascii));
        }
        return n;
    }

private:
    static constexpr std::size_t max_alts = 64;

    std::vector<std::pair<Var, int>> scope_;

    CTerm term(const Term& t) {
        CTerm c;
        switch (t.kind) {
            case Term::Kind::Numeral: c.value = Symbol::numeral(t.value); break;
            case Term::Kind::Constant:
                c.value = Symbol::constant(t.name);
                constants.insert(t.name);
                break;
            case Term::Kind::Variable: {
                c.kind = CTerm::Kind::Slot;
                for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
                    if (it->first.name == t.name) {
                        c.slot = it->second;
                        return c;
                    }
                }
                // Free variable: give it a slot so the caller can report it.
                c.slot = add_slot(t.var());
                break;
            }
            case Term::Kind::Binary:
                c.kind = CTerm::Kind::Binary;
                c.op   = t.op;
                c.ops.push_back(term(t.lhs()));
                c.ops.push_back(term(t.rhs()));
                break;
        }
        return c;
    }

    int add_slot(const Var& v) {
        sorts.push_back(v.sort);
        names.push_back(v.name);
        return static_cast<int>(sorts.size() - 1);
    }

    static Node finish(Node n) {
        free_slots(n, n.free);
        return n;
    }

    static Node constant_node(bool v) {
        Node n;
        n.kind = v ? Node::Kind::True : Node::Kind::False;
        return n;
    }

    Node junction(Node::Kind k, std::vector<Node> parts) {
        Node n;
        n.kind = k;
        for (auto& p : parts) {
            bool unit = k == Node::Kind::And ? p.kind == Node::Kind::True : p.kind == Node::Kind::False;
            bool zero = k == Node::Kind::And ? p.kind == Node::Kind::False : p.kind == Node::Kind::True;
            if (zero) return constant_node(k != Node::Kind::And);
            if (unit) continue;
            if (p.kind == k) {
                for (auto& q : p.subs) n.subs.push_back(std::move(q));
            }
            else {
                n.subs.push_back(std::move(p));
            }
        }
        if (n.subs.empty()) return constant_node(k == Node::Kind::And);
        if (n.subs.size() == 1) return std::move(n.subs.front());
        return finish(std::move(n));
    }

    // Disjunction of conjunctions equivalent to n, pulling existential
    // quantifiers up; gives up on a subformula once it would exceed max_alts.
    static std::vector<Node::Alt> expand(const Node& n) {
        switch (n.kind) {
            case Node::Kind::Or: {
                std::vector<Node::Alt> out;
                for (const auto& s : n.subs) {
                    auto part = expand(s);
                    out.insert(out.end(), part.begin(), part.end());
                }
                if (out.size() > max_alts) return {Node::Alt{{}, {n}}};
                return out;
            }
            case Node::Kind::And: {
                std::vector<Node::Alt> out{Node::Alt{}};
                for (const auto& s : n.subs) {
                    auto part = expand(s);
                    if (out.size() * part.size() > max_alts) part = {Node::Alt{{}, {s}}};
                    std::vector<Node::Alt> next;
                    for (const auto& a : out) {
                        for (const auto& b : part) {
                            Node::Alt c = a;
                            c.slots.insert(c.slots.end(), b.slots.begin(), b.slots.end());
                            c.conj.insert(c.conj.end(), b.conj.begin(), b.conj.end());
                            next.push_back(std::move(c));
                        }
                    }
                    out = std::move(next);
                }
                return out;
            }
            case Node::Kind::Exists: {
                std::vector<Node::Alt> out;
                for (const auto& a : n.alts) {
                    Node::Alt c = a;
                    out.push_back(std::move(c));
                }
                return out;
            }
            case Node::Kind::False: return {};
            case Node::Kind::True: return {Node::Alt{}};
            default: return {Node::Alt{{}, {n}}};
        }
    }

    Node quantified(const std::vector<Var>& vars, const Formula& body, bool exists_positive, bool negate_body) {
        auto             mark = scope_.size();
        std::vector<int> slots;
        for (const auto& v : vars) {
            int s = add_slot(v);
            scope_.emplace_back(v, s);
            slots.push_back(s);
        }
        Node inner = nnf(body, !negate_body);
        scope_.resize(mark);
        Node n;
        n.kind = exists_positive ? Node::Kind::Exists : Node::Kind::NotExists;
        for (auto& a : expand(inner)) {
            a.slots.insert(a.slots.end(), slots.begin(), slots.end());
            // Keep only the slots some conjunct mentions; the others are vacuous.
            std::vector<int> used;
            for (const auto& c : a.conj) {
                for (int x : c.free) used.push_back(x);
            }
            std::vector<int> kept;
            for (int s : a.slots) {
                if (std::find(used.begin(), used.end(), s) != used.end()) kept.push_back(s);
            }
            a.slots = std::move(kept);
            n.alts.push_back(std::move(a));
        }
        if (n.alts.empty()) return constant_node(!exists_positive);
        for (const auto& a : n.alts) {
            if (a.conj.empty()) return constant_node(exists_positive);
        }
        return finish(std::move(n));
    }

    Node nnf(const Formula& f, bool positive) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::True: return constant_node(positive);
            case K::False: return constant_node(!positive);
            case K::Atom: {
                Node n;
                n.kind      = Node::Kind::Atom;
                n.positive  = positive;
                n.predicate = f.predicate;
                for (const auto& a : f.args) n.args.push_back(term(a));
                return finish(std::move(n));
            }
            case K::Compare: {
                Node n;
                n.kind = Node::Kind::Cmp;
                n.rel  = positive ? f.rel : negate(f.rel);
                n.args.push_back(term(f.lhs()));
                n.args.push_back(term(f.rhs()));
                return finish(std::move(n));
            }
            case K::Not: return nnf(f.body(), !positive);
            case K::And:
            case K::Or: {
                std::vector<Node> parts;
                for (const auto& s : f.subs) parts.push_back(nnf(s, positive));
                bool conj = f.is(K::And) == positive;
                return junction(conj ? Node::Kind::And : Node::Kind::Or, std::move(parts));
            }
            case K::Implies: {
                if (positive) return junction(Node::Kind::Or, {nnf(f.sub(0), false), nnf(f.sub(1), true)});
                return junction(Node::Kind::And, {nnf(f.sub(0), true), nnf(f.sub(1), false)});
            }
            case K::Iff: {
                Node a = nnf(f.sub(0), true), na = nnf(f.sub(0), false);
                Node b = nnf(f.sub(1), positive), nb = nnf(f.sub(1), !positive);
                return junction(Node::Kind::Or,
                                {junction(Node::Kind::And, {std::move(a), std::move(b)}),
                                 junction(Node::Kind::And, {std::move(na), std::move(nb)})});
            }
            case K::Exists: return quantified(f.vars, f.body(), positive, false);
            case K::Forall: return quantified(f.vars, f.body(), !positive, true);
        }
        return constant_node(true);
    }
};

class Evaluator {
public:
    Evaluator(const Interpretation& i, const FormulaCompiler& c) : i_(i), sorts_(c.sorts) {
        constants_ = i.constants();
        constants_.insert(c.constants.begin(), c.constants.end());
        for (const auto& a : i.atoms()) {
            for (const auto& t : a.args) {
                if (t.is_constant()) constants_.insert(t.name());
            }
        }
        binding_.resize(sorts_.size());
        assigned_.assign(sorts_.size(), false);
    }

    EvalResult run(const Node& n) {
        boundary_ = false;
        bool v    = eval(n);
        return {v, boundary_};
    }

private:
    static constexpr std::uint64_t max_range = 10'000'000;

    Symbol value(const CTerm& t) {
        switch (t.kind) {
            case CTerm::Kind::Value: return t.value;
            case CTerm::Kind::Slot: return binding_[static_cast<std::size_t>(t.slot)];
            case CTerm::Kind::Binary: {
                Symbol l = value(t.ops[0]);
                Symbol r = value(t.ops[1]);
                if (!l.is_numeral() || !r.is_numeral()) throw Error("arithmetic on a symbolic constant");
                auto v = apply(t.op, l.value(), r.value());
                if (!v) throw ArithmeticOverflow("integer overflow evaluating " + to_string(l) + to_string(t.op) + to_string(r));
                note(*v);
                return Symbol::numeral(*v);
            }
        }
        return t.value;
    }

    void note(std::int64_t v) {
        if (!i_.window().contains(v)) boundary_ = true;
    }

    bool assigned(const std::vector<int>& slots) const {
        return std::all_of(slots.begin(), slots.end(), [&](int s) { return assigned_[static_cast<std::size_t>(s)]; });
    }

    bool eval(const Node& n) {
        switch (n.kind) {
            case Node::Kind::True: return true;
            case Node::Kind::False: return false;
            case Node::Kind::Atom: {
                GroundAtom a;
                a.predicate = n.predicate;
                for (const auto& t : n.args) a.args.push_back(value(t));
                return i_.holds(a) == n.positive;
            }
            case Node::Kind::Cmp: return holds(n.rel, value(n.args[0]), value(n.args[1]));
            case Node::Kind::And:
                for (const auto& s : n.subs) {
                    if (!eval(s)) return false;
                }
                return true;
            case Node::Kind::Or:
                for (const auto& s : n.subs) {
                    if (eval(s)) return true;
                }
                return false;
            case Node::Kind::Exists:
            case Node::Kind::NotExists: {
                bool found = false;
                for (const auto& a : n.alts) {
                    std::vector<char> done(a.conj.size(), 0);
                    if (search(a, done)) {
                        found = true;
                        break;
                    }
                }
                return found == (n.kind == Node::Kind::Exists);
            }
        }
        return false;
    }

    struct Choice {
        int                 slot = -1;
        std::vector<Symbol> values;
        const Node*         atom = nullptr; // enumerate this atom's extent instead
        std::uint64_t       cost = UINT64_MAX;
    };

    bool bare_unassigned(const CTerm& t) const {
        return t.kind == CTerm::Kind::Slot && !assigned_[static_cast<std::size_t>(t.slot)];
    }

    bool admissible(int slot, const Symbol& v) const {
        return sorts_[static_cast<std::size_t>(slot)] == Sort::General || v.is_numeral();
    }

    // Exact numeric range of `slot` implied by the pending comparisons, if any.
    void bounds(const Node::Alt& a, const std::vector<char>& done, int slot, std::optional<std::int64_t>& lo,
                std::optional<std::int64_t>& hi, bool& numerals_empty) {
        for (std::size_t ci = 0; ci < a.conj.size(); ++ci) {
            const Node& c = a.conj[ci];
            if (done[ci] || c.kind != Node::Kind::Cmp || c.rel == Rel::Ne) continue;
            bool others = std::all_of(c.free.begin(), c.free.end(), [&](int s) {
                return s == slot || assigned_[static_cast<std::size_t>(s)];
            });
            if (!others) continue;
            bool in_l = mentions(c.args[0], slot), in_r = mentions(c.args[1], slot);
            if (in_l == in_r) continue;
            Symbol other = value(in_l ? c.args[1] : c.args[0]);
            bound_side(in_l ? &c.args[0] : &c.args[1], in_l ? c.rel : mirror(c.rel), other, slot, binding_, lo, hi,
                       numerals_empty);
        }
    }

    Choice choose(const Node::Alt& a, const std::vector<char>& done) {
        Choice best;
        for (std::size_t ci = 0; ci < a.conj.size(); ++ci) {
            const Node& c = a.conj[ci];
            if (done[ci]) continue;
            if (c.kind == Node::Kind::Cmp && c.rel == Rel::Eq) {
                for (int side = 0; side < 2; ++side) {
                    const CTerm& v = c.args[static_cast<std::size_t>(side)];
                    const CTerm& t = c.args[static_cast<std::size_t>(1 - side)];
                    if (!bare_unassigned(v) || mentions(t, v.slot)) continue;
                    std::vector<int> rest;
                    slots_of(t, rest);
                    if (!assigned(rest)) continue;
                    Symbol x = value(t);
                    Choice ch;
                    ch.slot = v.slot;
                    ch.cost = 1;
                    if (admissible(v.slot, x)) {
                        if (x.is_numeral()) note(x.value());
                        ch.values.push_back(x);
                    }
                    return ch;
                }
            }
            if (c.kind == Node::Kind::Atom && c.positive) {
                bool any = std::any_of(c.args.begin(), c.args.end(), [&](const CTerm& t) { return bare_unassigned(t); });
                if (!any) continue;
                auto size = i_.extent(c.predicate, c.args.size()).size();
                if (size < best.cost) {
                    best      = Choice{};
                    best.atom = &c;
                    best.cost = size;
                }
            }
        }
        for (int s : a.slots) {
            if (assigned_[static_cast<std::size_t>(s)]) continue;
            std::optional<std::int64_t> lo, hi;
            bool                        empty = false;
            bounds(a, done, s, lo, hi, empty);
            bool general = sorts_[static_cast<std::size_t>(s)] == Sort::General;
            if (!empty && !(lo && hi)) continue;
            std::uint64_t n = 0;
            if (!empty && *hi >= *lo) n = static_cast<std::uint64_t>(*hi - *lo) + 1;
            if (n > max_range) throw SearchSpaceTooLarge("quantified variable ranges over " + std::to_string(n) + " values");
            std::uint64_t cost = n + (general ? constants_.size() : 0);
            if (cost >= best.cost) continue;
            best      = Choice{};
            best.slot = s;
            best.cost = cost;
            if (!empty) {
                for (std::int64_t v = *lo; v <= *hi; ++v) {
                    note(v);
                    best.values.push_back(Symbol::numeral(v));
                    if (v == INT64_MAX) break;
                }
            }
            if (general) {
                for (const auto& k : constants_) best.values.push_back(Symbol::constant(k));
            }
        }
        if (best.cost != UINT64_MAX) return best;
        return fallback(a, done);
    }

    // No exact range: the variable ranges over its finite universe.
    Choice fallback(const Node::Alt& a, const std::vector<char>& done) {
        auto determinable = [&](int s) {
            for (std::size_t ci = 0; ci < a.conj.size(); ++ci) {
                const Node& c = a.conj[ci];
                if (done[ci]) continue;
                if (c.kind == Node::Kind::Cmp && c.rel == Rel::Eq) {
                    for (int side = 0; side < 2; ++side) {
                        const CTerm& v = c.args[static_cast<std::size_t>(side)];
                        if (v.kind == CTerm::Kind::Slot && v.slot == s) return true;
                    }
                }
                if (c.kind == Node::Kind::Atom && c.positive) {
                    for (const auto& t : c.args) {
                        if (t.kind == CTerm::Kind::Slot && t.slot == s) return true;
                    }
                }
            }
            return false;
        };
        int pick = -1;
        for (int s : a.slots) {
            if (assigned_[static_cast<std::size_t>(s)]) continue;
            if (pick < 0) pick = s;
            if (!determinable(s)) {
                pick = s;
                break;
            }
        }
        Choice ch;
        ch.slot = pick;
        std::optional<std::int64_t> lo, hi;
        bool                        empty = false;
        bounds(a, done, pick, lo, hi, empty);
        if (!empty) {
            std::int64_t from = std::max(lo.value_or(i_.window().lo), i_.window().lo);
            std::int64_t to   = std::min(hi.value_or(i_.window().hi), i_.window().hi);
            for (std::int64_t v = from; v <= to; ++v) {
                ch.values.push_back(Symbol::numeral(v));
                if (v == INT64_MAX) break;
            }
        }
        if (sorts_[static_cast<std::size_t>(pick)] == Sort::General) {
            for (const auto& k : constants_) ch.values.push_back(Symbol::constant(k));
        }
        return ch;
    }

    bool search(const Node::Alt& a, std::vector<char>& done) {
        std::vector<std::size_t> closed;
        auto                     reopen = [&] {
            for (auto ci : closed) done[ci] = 0;
        };
        for (std::size_t ci = 0; ci < a.conj.size(); ++ci) {
            if (done[ci] || !assigned(a.conj[ci].free)) continue;
            if (!eval(a.conj[ci])) {
                reopen();
                return false;
            }
            done[ci] = 1;
            closed.push_back(ci);
        }
        bool open = std::any_of(a.slots.begin(), a.slots.end(), [&](int s) { return !assigned_[static_cast<std::size_t>(s)]; });
        if (!open) {
            reopen();
            return true;
        }
        Choice ch    = choose(a, done);
        bool   found = false;
        if (ch.atom) {
            const Node& at = *ch.atom;
            for (const auto& tup : i_.extent(at.predicate, at.args.size())) {
                std::vector<int> bound;
                bool             ok = true;
                for (std::size_t k = 0; k < at.args.size() && ok; ++k) {
                    const CTerm& t = at.args[k];
                    if (bare_unassigned(t)) {
                        if (!admissible(t.slot, tup[k])) ok = false;
                        else {
                            binding_[static_cast<std::size_t>(t.slot)]  = tup[k];
                            assigned_[static_cast<std::size_t>(t.slot)] = true;
                            bound.push_back(t.slot);
                        }
                        continue;
                    }
                    std::vector<int> s;
                    slots_of(t, s);
                    if (assigned(s)) ok = value(t) == tup[k];
                }
                if (ok) found = search(a, done);
                for (int s : bound) assigned_[static_cast<std::size_t>(s)] = false;
                if (found) break;
            }
        }
        else {
            auto slot = static_cast<std::size_t>(ch.slot);
            for (const auto& v : ch.values) {
                binding_[slot]  = v;
                assigned_[slot] = true;
                found           = search(a, done);
                assigned_[slot] = false;
                if (found) break;
            }
        }
        reopen();
        return found;
    }

    const Interpretation&  i_;
    std::vector<Sort>      sorts_;
    std::set<std::string>  constants_;
    Binding                binding_;
    std::vector<bool>      assigned_;
    bool                   boundary_ = false;
};

} // namespace detail

/// Evaluates a sentence. Quantified variables take exactly the values that
/// equalities, atoms of the interpretation or two-sided numeric bounds allow;
/// otherwise they range over the finite universe. Arithmetic is exact, and
/// any numeral outside the window that takes part sets `boundary`.
inline EvalResult eval(const Interpretation& i, const Formula& f) {
    detail::FormulaCompiler c;
    detail::Node            n = c.compile(f);
    return detail::Evaluator(i, c).run(n);
}

/// Conjunction of the sentences. A false verdict is marked boundary only
/// when every falsified sentence is.
inline EvalResult eval_all(const Interpretation& i, const std::vector<Formula>& fs) {
    EvalResult out{true, false};
    bool       clean_false = false;
    for (const auto& f : fs) {
        auto r = eval(i, f);
        if (r.value) {
            if (out.value) out.boundary = out.boundary || r.boundary;
            continue;
        }
        if (out.value) out = {false, true};
        if (!r.boundary) clean_false = true;
    }
    if (!out.value) out.boundary = !clean_false;
    return out;
}

/// Sentences compiled once and evaluated over many interpretations.
class SentenceSet {
public:
    explicit SentenceSet(const std::vector<Formula>& fs) {
        for (const auto& f : fs) {
            detail::FormulaCompiler c;
            auto                    n = c.compile(f);
            items_.push_back({std::move(c), std::move(n)});
        }
    }
    std::size_t size() const { return items_.size(); }
    EvalResult  eval(const Interpretation& i, std::size_t k) const {
        return detail::Evaluator(i, items_[k].first).run(items_[k].second);
    }
    EvalResult eval(const Interpretation& i) const {
        EvalResult out{true, false};
        bool       clean_false = false;
        for (std::size_t k = 0; k < items_.size(); ++k) {
            auto r = eval(i, k);
            if (r.value) {
                if (out.value) out.boundary = out.boundary || r.boundary;
                continue;
            }
            out.value = false;
            if (!r.boundary) {
                clean_false = true;
                break;
            }
        }
        if (!out.value) out.boundary = !clean_false;
        return out;
    }

private:
    std::vector<std::pair<detail::FormulaCompiler, detail::Node>> items_;
};

struct VerifyOptions {
    std::set<std::string> extra_constants;
    std::uint64_t         max_subsets = 1u << 20;
    std::size_t           samples     = 4096;
    std::size_t           max_models  = 4096; // stable models lifted and checked against NCOMP
    std::uint64_t         seed        = 1;
    Method                method      = Method::Auto;
};

struct Counterexample {
    std::vector<GroundAtom> atoms;
    std::string             detail;
};

struct VerifyReport {
    enum class Enumeration : std::uint8_t { Full, Sampled };

    IntWindow                   window;
    bool                        tight = true;
    std::vector<std::string>    cycle;
    std::size_t                 sentences     = 0;
    std::size_t                 stable_models = 0;
    std::vector<std::string>    warnings;

    std::size_t                 stable_checked = 0;
    std::vector<Counterexample> stable_violations;
    std::size_t                 stable_inconclusive = 0;

    std::size_t                 base_size  = 0;
    Enumeration                 enumeration = Enumeration::Full;
    std::uint64_t               candidates = 0;
    std::size_t                 completion_models = 0;
    std::vector<Counterexample> subset_violations; // only for tight programs
    std::vector<Counterexample> gap_witnesses;       // models of NCOMP that are not stable, non-tight only
    std::size_t                 subset_inconclusive = 0;

    bool ok() const { return stable_violations.empty() && subset_violations.empty(); }
};

namespace detail {

inline std::string atoms_text(const std::vector<GroundAtom>& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? ", " : "") + to_string(atoms[i]);
    return out + "}";
}

inline std::vector<GroundAtom> herbrand_restriction(const Program& p, IntWindow w, const std::set<std::string>& consts,
                                                    const GroundProgram& g, std::uint64_t limit) {
    std::set<GroundAtom> base(g.atoms.begin(), g.atoms.end());
    std::vector<Symbol>  values;
    for (auto v = w.lo; v <= w.hi; ++v) values.push_back(Symbol::numeral(v));
    for (const auto& c : consts) values.push_back(Symbol::constant(c));
    for (const auto& sym : predicate_symbols(p)) {
        std::vector<std::size_t> idx(sym.arity, 0);
        for (;;) {
            GroundAtom a;
            a.predicate = sym.name;
            for (auto i : idx) a.args.push_back(values[i]);
            base.insert(std::move(a));
            if (base.size() > limit) return {base.begin(), base.end()};
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == values.size()) idx[k++] = 0;
            if (k == idx.size() || values.empty()) break;
        }
    }
    return {base.begin(), base.end()};
}

} // namespace detail

/// Executable form of the correspondence between stable models and NCOMP:
/// every stable model found within the window must lift to a model of NCOMP,
/// and subsets of the window-restricted Herbrand base are checked in both
/// directions (a biconditional for tight programs; gaps are listed otherwise).
inline VerifyReport verify_correspondence(const Program& p, IntWindow w, const VerifyOptions& opt = {}) {
    VerifyReport rep;
    rep.window = w;
    auto tr    = is_tight(p);
    rep.tight  = tr.tight;
    for (const auto& v : tr.cycle) rep.cycle.push_back(to_string(v));

    std::set<std::string> consts = program_constants(p);
    consts.insert(opt.extra_constants.begin(), opt.extra_constants.end());
    auto sentences = ncomp(p);
    rep.sentences  = sentences.size();
    SentenceSet ncomp_set(sentences);

    GroundProgram g = ground(p, w, opt.extra_constants);
    rep.warnings    = g.warnings;

    auto check = [&](const std::set<GroundAtom>& s) {
        IntWindow lw = hull(w, s);
        return ncomp_set.eval(lift(s, lw, consts));
    };
    auto failing = [&](const std::set<GroundAtom>& s) {
        IntWindow      lw = hull(w, s);
        Interpretation in = lift(s, lw, consts);
        for (std::size_t k = 0; k < sentences.size(); ++k) {
            if (!ncomp_set.eval(in, k).value) return print_formula(sentences[k], Style::Ascii);
        }
        return std::string();
    };

    std::vector<StableModel> models;
    rep.stable_models = for_each_stable_model(g, opt.method, [&](const std::vector<bool>& in) {
        if (models.size() >= opt.max_models) return;
        models.push_back(detail::to_model(g, in));
        const auto&          m = models.back();
        std::set<GroundAtom> s(m.begin(), m.end());
        ++rep.stable_checked;
        auto r = check(s);
        if (r.value) return;
        if (r.boundary) {
            ++rep.stable_inconclusive;
            return;
        }
        rep.stable_violations.push_back({m, "stable model falsifies " + failing(s)});
    });

    auto base     = detail::herbrand_restriction(p, w, consts, g, 63);
    rep.base_size = base.size();
    auto visit    = [&](const std::set<GroundAtom>& s) {
        auto                    r      = check(s);
        bool                    stable = is_stable(g, s);
        std::vector<GroundAtom> atoms(s.begin(), s.end());
        if (r.value) ++rep.completion_models;
        if (r.value == stable) return;
        if (r.boundary) {
            ++rep.subset_inconclusive;
            return;
        }
        if (stable) {
            rep.subset_violations.push_back({atoms, "stable but falsifies " + failing(s)});
        }
        else if (rep.tight) {
            rep.subset_violations.push_back({atoms, "satisfies NCOMP but is not stable"});
        }
        else {
            rep.gap_witnesses.push_back({atoms, "satisfies NCOMP but is not stable"});
        }
    };
    bool full = base.size() < 64 && (std::uint64_t{1} << base.size()) <= opt.max_subsets;
    if (full) {
        rep.enumeration = VerifyReport::Enumeration::Full;
        rep.candidates  = std::uint64_t{1} << base.size();
        for (std::uint64_t mask = 0; mask < rep.candidates; ++mask) {
            std::set<GroundAtom> s;
            for (std::size_t i = 0; i < base.size(); ++i) {
                if (mask >> i & 1) s.insert(base[i]);
            }
            visit(s);
        }
    }
    else {
        rep.enumeration = VerifyReport::Enumeration::Sampled;
        rep.candidates  = opt.samples;
        std::mt19937_64 rng(opt.seed);
        for (std::size_t k = 0; k < opt.samples; ++k) {
            std::set<GroundAtom> s;
            for (const auto& a : base) {
                if (rng() & 1) s.insert(a);
            }
            visit(s);
        }
        // The stable models lifted above are always among the candidates.
        for (const auto& m : models) visit(std::set<GroundAtom>(m.begin(), m.end()));
        rep.candidates += models.size();
    }
    return rep;
}

inline std::string to_text(const VerifyReport& r) {
    std::string out;
    out += "window: " + to_string(r.window) + "\n";
    out += "sentences: " + std::to_string(r.sentences) + "\n";
    out += "stable models: " + std::to_string(r.stable_models) + "\n";
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    out += "stable models satisfy NCOMP: " + std::string(r.stable_violations.empty() ? "pass" : "FAIL") + " (" +
           std::to_string(r.stable_checked) + " of " + std::to_string(r.stable_models) + " checked, " + std::to_string(r.stable_inconclusive) +
           " inconclusive)\n";
    for (const auto& c : r.stable_violations) out += "  counterexample " + detail::atoms_text(c.atoms) + ": " + c.detail + "\n";
    std::string mode = r.enumeration == VerifyReport::Enumeration::Full ? "full" : "sampled";
    if (r.tight) {
        out += "models of NCOMP are stable: " + std::string(r.subset_violations.empty() ? "pass" : "FAIL") + " (" + mode + ", " +
               std::to_string(r.candidates) + " candidates over " + std::to_string(r.base_size) + " atoms, " +
               std::to_string(r.completion_models) + " models of NCOMP, " + std::to_string(r.subset_inconclusive) +
               " inconclusive)\n";
    }
    else {
        std::string cyc;
        for (const auto& v : r.cycle) cyc += v + " -> ";
        if (!r.cycle.empty()) cyc += r.cycle.front();
        out += "models of NCOMP are stable: not required, program is not tight (cycle " + cyc + ")\n";
        out += "  " + mode + " check of " + std::to_string(r.candidates) + " candidates over " +
               std::to_string(r.base_size) + " atoms: " + std::to_string(r.gap_witnesses.size()) +
               " models of NCOMP are not stable\n";
    }
    for (const auto& c : r.subset_violations) out += "  counterexample " + detail::atoms_text(c.atoms) + ": " + c.detail + "\n";
    for (const auto& c : r.gap_witnesses) out += "  gap " + detail::atoms_text(c.atoms) + ": " + c.detail + "\n";
    out += r.ok() ? "result: pass\n" : "result: FAIL\n";
    return out;
}

} // namespace ncomp
