#pragma once

#include "error.hpp"
#include "printer.hpp"
#include "tightness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ncomp {

/// Finite range of numerals over which otherwise unbounded variables are
/// instantiated.
struct IntWindow {
    std::int64_t lo = -1;
    std::int64_t hi = 1;

    bool contains(std::int64_t n) const { return lo <= n && n <= hi; }
    std::uint64_t size() const { return lo > hi ? 0 : static_cast<std::uint64_t>(hi - lo) + 1; }

    friend bool operator==(const IntWindow&, const IntWindow&) = default;
};

inline std::string to_string(const IntWindow& w) { return std::to_string(w.lo) + ".." + std::to_string(w.hi); }

/// Parses `LO..HI`.
inline IntWindow parse_window(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw Error("window must have the form LO..HI: " + text);
    auto num = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [p, ec]   = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) throw Error("bad window bound '" + std::string(s) + "'");
        return v;
    };
    IntWindow w{num(std::string_view(text).substr(0, dots)), num(std::string_view(text).substr(dots + 2))};
    if (w.lo > w.hi) throw Error("empty window " + text);
    return w;
}

/// [min numeral - 1, max numeral + 1]; [-1, 1] for programs without numerals.
inline IntWindow default_window(const Program& p) {
    auto nums = program_numerals(p);
    if (nums.empty()) return {};
    return {*nums.begin() - 1, *nums.rbegin() + 1};
}

struct GroundRule {
    Rule::Head       kind = Rule::Head::Basic;
    int              head = -1;
    std::vector<int> pos;
    std::vector<int> neg;

    bool is_choice() const { return kind == Rule::Head::Choice; }
    bool is_constraint() const { return kind == Rule::Head::None; }

    friend bool operator==(const GroundRule&, const GroundRule&) = default;
    friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
};

/// Propositional image of a program: atoms are numbered in the order they
/// were interned; comparisons and arithmetic are evaluated away.
class GroundProgram {
public:
    std::vector<GroundAtom>  atoms;
    std::vector<GroundRule>  rules;
    std::vector<std::string> warnings;

    int intern(const GroundAtom& a) {
        auto [it, fresh] = index_.try_emplace(a, static_cast<int>(atoms.size()));
        if (fresh) atoms.push_back(a);
        return it->second;
    }
    std::optional<int> find(const GroundAtom& a) const {
        auto it = index_.find(a);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    /// Atoms occurring in some head.
    std::vector<bool> head_mask() const {
        std::vector<bool> m(atoms.size(), false);
        for (const auto& r : rules) {
            if (r.head >= 0) m[static_cast<std::size_t>(r.head)] = true;
        }
        return m;
    }
    bool empty() const { return rules.empty(); }

private:
    std::unordered_map<GroundAtom, int, GroundAtomHash> index_;
};

inline std::string to_string(const GroundRule& r, const GroundProgram& g) {
    std::string out;
    if (r.is_choice()) out = "{" + to_string(g.atoms[static_cast<std::size_t>(r.head)]) + "}";
    else if (r.head >= 0) out = to_string(g.atoms[static_cast<std::size_t>(r.head)]);
    std::vector<std::string> lits;
    for (int a : r.pos) lits.push_back(to_string(g.atoms[static_cast<std::size_t>(a)]));
    for (int a : r.neg) lits.push_back("not " + to_string(g.atoms[static_cast<std::size_t>(a)]));
    if (!lits.empty() || r.is_constraint()) {
        out += r.head >= 0 ? " :- " : ":- ";
        for (std::size_t i = 0; i < lits.size(); ++i) out += (i ? ", " : "") + lits[i];
    }
    return out + ".";
}

struct GroundOptions {
    IntWindow             window;
    std::set<std::string> extra_constants;
    // When set, positive body atoms range over exactly these atoms instead of
    // the derivable ones, and every negative literal is kept.
    std::optional<std::set<GroundAtom>> fixed_domain;
    std::uint64_t                       max_range = 10'000'000;
};

namespace detail {

struct CTerm {
    enum class Kind : std::uint8_t { Value, Slot, Binary };
    Kind               kind = Kind::Value;
    Symbol             value;
    int                slot = -1;
    BinOp              op   = BinOp::Add;
    std::vector<CTerm> ops;
};

using Binding = std::vector<Symbol>;

inline std::optional<Symbol> eval(const CTerm& t, const Binding& b) {
    switch (t.kind) {
        case CTerm::Kind::Value: return t.value;
        case CTerm::Kind::Slot: return b[static_cast<std::size_t>(t.slot)];
        case CTerm::Kind::Binary: {
            auto l = eval(t.ops[0], b);
            if (!l || !l->is_numeral()) return std::nullopt;
            auto r = eval(t.ops[1], b);
            if (!r || !r->is_numeral()) return std::nullopt;
            auto v = apply(t.op, l->value(), r->value());
            if (!v) return std::nullopt;
            return Symbol::numeral(*v);
        }
    }
    return std::nullopt;
}

inline void slots_of(const CTerm& t, std::vector<int>& out) {
    if (t.kind == CTerm::Kind::Slot && std::find(out.begin(), out.end(), t.slot) == out.end()) out.push_back(t.slot);
    for (const auto& o : t.ops) slots_of(o, out);
}

inline bool mentions(const CTerm& t, int slot) {
    if (t.kind == CTerm::Kind::Slot) return t.slot == slot;
    for (const auto& o : t.ops) {
        if (mentions(o, slot)) return true;
    }
    return false;
}

/// Narrows [lo, hi] for the numeral values of `slot` given `side rel value`,
/// where `side` mentions the slot linearly through + and - and every other
/// slot in it is bound. A symbolic value bounds every numeral from above.
inline void bound_side(const CTerm* side, Rel rel, Symbol value, int slot, const Binding& b,
                       std::optional<std::int64_t>& lo, std::optional<std::int64_t>& hi, bool& numerals_empty) {
    auto tighten = [&](Rel r, std::int64_t v) {
        switch (r) {
            case Rel::Lt:
                if (v == INT64_MIN) numerals_empty = true;
                else hi = std::min(hi.value_or(INT64_MAX), v - 1);
                break;
            case Rel::Le: hi = std::min(hi.value_or(INT64_MAX), v); break;
            case Rel::Gt:
                if (v == INT64_MAX) numerals_empty = true;
                else lo = std::max(lo.value_or(INT64_MIN), v + 1);
                break;
            case Rel::Ge: lo = std::max(lo.value_or(INT64_MIN), v); break;
            case Rel::Eq:
                lo = std::max(lo.value_or(INT64_MIN), v);
                hi = std::min(hi.value_or(INT64_MAX), v);
                break;
            case Rel::Ne: break;
        }
    };
    for (;;) {
        if (side->kind == CTerm::Kind::Slot) {
            if (value.is_numeral()) tighten(rel, value.value());
            else if (rel == Rel::Gt || rel == Rel::Ge || rel == Rel::Eq) numerals_empty = true;
            return;
        }
        if (side->kind != CTerm::Kind::Binary || !value.is_numeral() || side->op == BinOp::Mul) return;
        const CTerm& a = side->ops[0];
        const CTerm& c = side->ops[1];
        bool         in_a = mentions(a, slot), in_c = mentions(c, slot);
        if (in_a == in_c) return;
        auto other = eval(in_a ? c : a, b);
        if (!other || !other->is_numeral()) return;
        std::optional<std::int64_t> v;
        if (side->op == BinOp::Add) {
            v = apply(BinOp::Sub, value.value(), other->value());
            side = in_a ? &a : &c;
        }
        else if (in_a) {
            v    = apply(BinOp::Add, value.value(), other->value());
            side = &a;
        }
        else {
            // a - c rel value  <=>  c mirror(rel) a - value
            v    = apply(BinOp::Sub, other->value(), value.value());
            rel  = mirror(rel);
            side = &c;
        }
        if (!v) return;
        value = Symbol::numeral(*v);
    }
}

struct CLit {
    BodyLiteral::Kind  kind     = BodyLiteral::Kind::Positive;
    bool               interval = false;
    int                relation = -1; // index of the predicate relation for atoms
    std::string        predicate;
    std::vector<CTerm> args; // atom args, {lhs, rhs}, or {lhs, lo, hi}
    Rel                rel = Rel::Eq;
    std::vector<int>   slots;
};

struct Step {
    enum class Kind : std::uint8_t { Check, Bind, Interval, Join, Enumerate };
    Kind             kind = Kind::Check;
    int              lit  = -1;
    int              slot = -1;
    CTerm            term;      // Bind
    std::vector<int> join_bind; // Join: slot bound by each argument, or -1 to compare
    std::vector<int> bounds;    // Enumerate: literals that may narrow the range
    bool             with_constants = true;
};

struct CompiledRule {
    std::size_t              index = 0;
    Rule::Head               kind  = Rule::Head::Basic;
    int                      head_relation = -1;
    std::string              head_predicate;
    std::vector<CTerm>       head_args;
    std::vector<CLit>        lits;
    std::vector<std::string> slot_names;
    std::vector<Step>        steps;
    std::vector<int>         negatives; // literal indices
};

struct TupleHash {
    std::size_t operator()(const std::vector<Symbol>& t) const noexcept {
        std::size_t h = t.size();
        for (const auto& s : t) h ^= s.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct Relation {
    std::string                                                             name;
    std::size_t                                                             arity = 0;
    std::vector<std::vector<Symbol>>                                        tuples;
    std::unordered_map<std::vector<Symbol>, std::size_t, TupleHash>         index;
    std::size_t                                                             old_end   = 0;
    std::size_t                                                             delta_end = 0;

    bool insert(const std::vector<Symbol>& t) {
        auto [it, fresh] = index.try_emplace(t, tuples.size());
        if (fresh) tuples.push_back(t);
        return fresh;
    }
    void seal() { old_end = delta_end = tuples.size(); }
};

enum class Range : std::uint8_t { All, Old, Delta };

struct Instance {
    std::size_t                      rule = 0;
    Rule::Head                       kind = Rule::Head::Basic;
    std::optional<GroundAtom>        head;
    std::vector<GroundAtom>          pos;
    std::vector<GroundAtom>          neg;
};

class Grounder {
public:
    Grounder(const Program& p, const GroundOptions& opt) : prog_(p), opt_(opt) {
        constants_ = program_constants(p);
        constants_.insert(opt.extra_constants.begin(), opt.extra_constants.end());
        for (const auto& sym : predicate_symbols(p)) relation_id(sym);
        for (std::size_t i = 0; i < p.rules.size(); ++i) rules_.push_back(compile(p.rules[i], i));
    }

    GroundProgram run() {
        if (opt_.fixed_domain) {
            for (const auto& a : *opt_.fixed_domain) {
                auto it = rel_ids_.find({a.predicate, a.args.size()});
                if (it != rel_ids_.end()) rels_[static_cast<std::size_t>(it->second)].insert(a.args);
            }
            for (auto& r : rels_) r.seal();
            for (auto& r : rules_) evaluate(r, std::vector<Range>(r.lits.size(), Range::All));
            return finish();
        }
        for (const auto& scc : components()) saturate(scc);
        for (auto& r : rules_) {
            if (r.kind == Rule::Head::None) evaluate(r, std::vector<Range>(r.lits.size(), Range::All));
        }
        return finish();
    }

    const std::vector<CompiledRule>& compiled() const { return rules_; }

private:
    int relation_id(const PredicateSymbol& sym) {
        auto [it, fresh] = rel_ids_.try_emplace({sym.name, sym.arity}, static_cast<int>(rels_.size()));
        if (fresh) {
            Relation r;
            r.name  = sym.name;
            r.arity = sym.arity;
            rels_.push_back(std::move(r));
        }
        return it->second;
    }

    static CTerm compile_term(const Term& t, std::vector<std::string>& slots) {
        CTerm c;
        switch (t.kind) {
            case Term::Kind::Numeral: c.value = Symbol::numeral(t.value); break;
            case Term::Kind::Constant: c.value = Symbol::constant(t.name); break;
            case Term::Kind::Variable: {
                c.kind  = CTerm::Kind::Slot;
                auto it = std::find(slots.begin(), slots.end(), t.name);
                c.slot  = static_cast<int>(it - slots.begin());
                if (it == slots.end()) slots.push_back(t.name);
                break;
            }
            case Term::Kind::Binary:
                c.kind = CTerm::Kind::Binary;
                c.op   = t.op;
                c.ops.push_back(compile_term(t.lhs(), slots));
                c.ops.push_back(compile_term(t.rhs(), slots));
                break;
        }
        return c;
    }

    CompiledRule compile(const Rule& r, std::size_t index) {
        CompiledRule c;
        c.index      = index;
        c.kind       = r.head_kind;
        c.slot_names = rule_variables(r);
        if (r.has_head()) {
            c.head_relation  = relation_id(signature(r.head));
            c.head_predicate = r.head.predicate;
            for (const auto& t : r.head.args) c.head_args.push_back(compile_term(t, c.slot_names));
        }
        std::set<std::string> critical;
        for_each_term(r, [&](const Term& t) {
            if (t.is_binary()) for_each_variable(t, [&](const Term& v) { critical.insert(v.name); });
        });
        for (const auto& l : r.body) {
            CLit cl;
            cl.kind = l.kind;
            if (l.is_atom()) {
                cl.predicate = l.atom.predicate;
                cl.relation  = relation_id(signature(l.atom));
                for (const auto& t : l.atom.args) cl.args.push_back(compile_term(t, c.slot_names));
            }
            else {
                cl.interval = l.cmp.is_interval();
                cl.rel      = l.cmp.rel;
                cl.args.push_back(compile_term(l.cmp.lhs, c.slot_names));
                cl.args.push_back(compile_term(l.cmp.rhs, c.slot_names));
                if (cl.interval) {
                    cl.args.push_back(compile_term(l.cmp.high, c.slot_names));
                    for_each_variable(l.cmp.lhs, [&](const Term& v) { critical.insert(v.name); });
                }
            }
            for (const auto& a : cl.args) slots_of(a, cl.slots);
            c.lits.push_back(std::move(cl));
        }
        plan(c, critical);
        return c;
    }

    static bool all_bound(const std::vector<int>& slots, const std::vector<bool>& bound) {
        return std::all_of(slots.begin(), slots.end(), [&](int s) { return bound[static_cast<std::size_t>(s)]; });
    }

    static void plan(CompiledRule& c, const std::set<std::string>& critical) {
        std::vector<bool> bound(c.slot_names.size(), false);
        std::vector<bool> done(c.lits.size(), false);
        for (std::size_t i = 0; i < c.lits.size(); ++i) {
            if (c.lits[i].kind == BodyLiteral::Kind::Negated) {
                c.negatives.push_back(static_cast<int>(i));
                done[i] = true;
            }
        }
        auto add_checks = [&] {
            for (std::size_t i = 0; i < c.lits.size(); ++i) {
                if (done[i] || !all_bound(c.lits[i].slots, bound)) continue;
                Step s;
                s.lit = static_cast<int>(i);
                if (c.lits[i].kind == BodyLiteral::Kind::Positive) {
                    s.kind = Step::Kind::Join;
                    s.join_bind.assign(c.lits[i].args.size(), -1);
                }
                c.steps.push_back(std::move(s));
                done[i] = true;
            }
        };
        for (;;) {
            add_checks();
            if (std::all_of(done.begin(), done.end(), [](bool d) { return d; }) &&
                std::all_of(bound.begin(), bound.end(), [](bool b) { return b; })) {
                break;
            }
            if (try_bind(c, bound, done) || try_join(c, bound, done)) continue;
            enumerate_one(c, bound, done, critical);
        }
    }

    static bool try_bind(CompiledRule& c, std::vector<bool>& bound, std::vector<bool>& done) {
        for (std::size_t i = 0; i < c.lits.size(); ++i) {
            const CLit& l = c.lits[i];
            if (done[i] || l.kind != BodyLiteral::Kind::Comparison) continue;
            if (l.interval) {
                const CTerm& t = l.args[0];
                if (t.kind != CTerm::Kind::Slot || bound[static_cast<std::size_t>(t.slot)]) continue;
                std::vector<int> rest;
                slots_of(l.args[1], rest);
                slots_of(l.args[2], rest);
                if (!all_bound(rest, bound) || std::find(rest.begin(), rest.end(), t.slot) != rest.end()) continue;
                Step s;
                s.kind = Step::Kind::Interval;
                s.lit  = static_cast<int>(i);
                s.slot = t.slot;
                c.steps.push_back(std::move(s));
                bound[static_cast<std::size_t>(t.slot)] = true;
                done[i]                                  = true;
                return true;
            }
            if (l.rel != Rel::Eq) continue;
            for (int side = 0; side < 2; ++side) {
                const CTerm& v = l.args[static_cast<std::size_t>(side)];
                const CTerm& t = l.args[static_cast<std::size_t>(1 - side)];
                if (v.kind != CTerm::Kind::Slot || bound[static_cast<std::size_t>(v.slot)] || mentions(t, v.slot)) continue;
                std::vector<int> rest;
                slots_of(t, rest);
                if (!all_bound(rest, bound)) continue;
                Step s;
                s.kind = Step::Kind::Bind;
                s.lit  = static_cast<int>(i);
                s.slot = v.slot;
                s.term = t;
                c.steps.push_back(std::move(s));
                bound[static_cast<std::size_t>(v.slot)] = true;
                done[i]                                  = true;
                return true;
            }
        }
        return false;
    }

    static bool try_join(CompiledRule& c, std::vector<bool>& bound, std::vector<bool>& done) {
        int best = -1, best_score = -1;
        for (std::size_t i = 0; i < c.lits.size(); ++i) {
            const CLit& l = c.lits[i];
            if (done[i] || l.kind != BodyLiteral::Kind::Positive) continue;
            std::vector<bool> after = bound;
            for (const auto& a : l.args) {
                if (a.kind == CTerm::Kind::Slot) after[static_cast<std::size_t>(a.slot)] = true;
            }
            bool ok    = true;
            int  score = 0;
            for (const auto& a : l.args) {
                if (a.kind == CTerm::Kind::Slot) {
                    if (bound[static_cast<std::size_t>(a.slot)]) ++score;
                    continue;
                }
                std::vector<int> s;
                slots_of(a, s);
                if (!all_bound(s, after)) ok = false;
                else if (all_bound(s, bound)) ++score;
            }
            if (ok && score > best_score) {
                best       = static_cast<int>(i);
                best_score = score;
            }
        }
        if (best < 0) return false;
        const CLit& l = c.lits[static_cast<std::size_t>(best)];
        Step        s;
        s.kind = Step::Kind::Join;
        s.lit  = best;
        for (const auto& a : l.args) {
            if (a.kind == CTerm::Kind::Slot && !bound[static_cast<std::size_t>(a.slot)]) {
                s.join_bind.push_back(a.slot);
                bound[static_cast<std::size_t>(a.slot)] = true;
            }
            else {
                s.join_bind.push_back(-1);
            }
        }
        c.steps.push_back(std::move(s));
        done[static_cast<std::size_t>(best)] = true;
        return true;
    }

    // Literals that would bound `slot` once it is the only unbound slot in them.
    static std::vector<int> bounding_literals(const CompiledRule& c, int slot, const std::vector<bool>& bound) {
        std::vector<int> out;
        for (std::size_t i = 0; i < c.lits.size(); ++i) {
            const CLit& l = c.lits[i];
            if (l.kind != BodyLiteral::Kind::Comparison || (!l.interval && l.rel == Rel::Ne)) continue;
            if (std::find(l.slots.begin(), l.slots.end(), slot) == l.slots.end()) continue;
            bool others = std::all_of(l.slots.begin(), l.slots.end(),
                                      [&](int s) { return s == slot || bound[static_cast<std::size_t>(s)]; });
            if (others) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    // Slots that a pending interval or equality could bind later.
    static std::vector<bool> bindable(const CompiledRule& c, const std::vector<bool>& done) {
        std::vector<bool> out(c.slot_names.size(), false);
        for (std::size_t i = 0; i < c.lits.size(); ++i) {
            const CLit& l = c.lits[i];
            if (done[i] || l.kind != BodyLiteral::Kind::Comparison || (!l.interval && l.rel != Rel::Eq)) continue;
            for (std::size_t side = 0; side < (l.interval ? 1u : 2u); ++side) {
                const CTerm& v = l.args[side];
                if (v.kind == CTerm::Kind::Slot) out[static_cast<std::size_t>(v.slot)] = true;
            }
        }
        return out;
    }

    static void enumerate_one(CompiledRule& c, std::vector<bool>& bound, const std::vector<bool>& done,
                              const std::set<std::string>& critical) {
        auto later = bindable(c, done);
        int  best = -1, best_score = -1;
        for (std::size_t s = 0; s < bound.size(); ++s) {
            if (bound[s]) continue;
            int score = static_cast<int>(bounding_literals(c, static_cast<int>(s), bound).size());
            if (!later[s]) score += 1 << 16;
            if (score > best_score) {
                best       = static_cast<int>(s);
                best_score = score;
            }
        }
        Step s;
        s.kind           = Step::Kind::Enumerate;
        s.slot           = best;
        s.bounds         = bounding_literals(c, best, bound);
        s.with_constants = !critical.count(c.slot_names[static_cast<std::size_t>(best)]);
        c.steps.push_back(std::move(s));
        bound[static_cast<std::size_t>(best)] = true;
    }

    // Strongly connected components of the positive dependency graph, dependencies first.
    std::vector<std::vector<int>> components() const {
        std::size_t                   n = rels_.size();
        std::vector<std::vector<int>> adj(n);
        for (const auto& r : rules_) {
            if (r.head_relation < 0) continue;
            for (const auto& l : r.lits) {
                if (l.kind == BodyLiteral::Kind::Positive) adj[static_cast<std::size_t>(r.head_relation)].push_back(l.relation);
            }
        }
        std::vector<int>              idx(n, -1), low(n, 0), stack;
        std::vector<bool>             on(n, false);
        std::vector<std::vector<int>> out;
        int                           counter = 0;
        // Iterative Tarjan.
        for (std::size_t root = 0; root < n; ++root) {
            if (idx[root] >= 0) continue;
            std::vector<std::pair<int, std::size_t>> frames{{static_cast<int>(root), 0}};
            idx[root] = low[root] = counter++;
            stack.push_back(static_cast<int>(root));
            on[root] = true;
            while (!frames.empty()) {
                auto& [v, e] = frames.back();
                auto  uv     = static_cast<std::size_t>(v);
                if (e < adj[uv].size()) {
                    int  w  = adj[uv][e++];
                    auto uw = static_cast<std::size_t>(w);
                    if (idx[uw] < 0) {
                        idx[uw] = low[uw] = counter++;
                        stack.push_back(w);
                        on[uw] = true;
                        frames.emplace_back(w, 0);
                    }
                    else if (on[uw]) {
                        low[uv] = std::min(low[uv], idx[uw]);
                    }
                    continue;
                }
                if (low[uv] == idx[uv]) {
                    std::vector<int> comp;
                    int              w = -1;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on[static_cast<std::size_t>(w)] = false;
                        comp.push_back(w);
                    } while (w != v);
                    out.push_back(std::move(comp));
                }
                int finished = v;
                frames.pop_back();
                if (!frames.empty()) {
                    auto up = static_cast<std::size_t>(frames.back().first);
                    low[up] = std::min(low[up], low[static_cast<std::size_t>(finished)]);
                }
            }
        }
        return out;
    }

    void saturate(const std::vector<int>& scc) {
        std::set<int> members(scc.begin(), scc.end());
        std::vector<CompiledRule*> rules;
        for (auto& r : rules_) {
            if (r.head_relation >= 0 && members.count(r.head_relation)) rules.push_back(&r);
        }
        for (int m : scc) rels_[static_cast<std::size_t>(m)].seal();
        bool first = true;
        for (;;) {
            for (auto* r : rules) {
                std::vector<std::size_t> recursive;
                for (std::size_t i = 0; i < r->lits.size(); ++i) {
                    if (r->lits[i].kind == BodyLiteral::Kind::Positive && members.count(r->lits[i].relation)) recursive.push_back(i);
                }
                if (first) {
                    if (recursive.empty()) evaluate(*r, std::vector<Range>(r->lits.size(), Range::All));
                    continue;
                }
                for (std::size_t k = 0; k < recursive.size(); ++k) {
                    std::vector<Range> ranges(r->lits.size(), Range::All);
                    for (std::size_t j = 0; j < k; ++j) ranges[recursive[j]] = Range::Old;
                    ranges[recursive[k]] = Range::Delta;
                    evaluate(*r, ranges);
                }
            }
            first = false;
            bool grown = false;
            for (int m : scc) {
                auto& rel   = rels_[static_cast<std::size_t>(m)];
                rel.old_end = rel.delta_end;
            }
            for (std::size_t i = pending_from_; i < instances_.size(); ++i) {
                const auto& in = instances_[i];
                if (!in.head) continue;
                auto& rel = rels_[static_cast<std::size_t>(rules_[in.rule].head_relation)];
                if (rel.insert(in.head->args)) grown = true;
            }
            pending_from_ = instances_.size();
            for (int m : scc) rels_[static_cast<std::size_t>(m)].delta_end = rels_[static_cast<std::size_t>(m)].tuples.size();
            if (!grown) break;
        }
        for (int m : scc) rels_[static_cast<std::size_t>(m)].seal();
    }

    std::pair<std::size_t, std::size_t> span(const Relation& rel, Range r) const {
        switch (r) {
            case Range::Old: return {0, rel.old_end};
            case Range::Delta: return {rel.old_end, rel.delta_end};
            case Range::All: break;
        }
        return {0, rel.delta_end};
    }

    void evaluate(CompiledRule& r, const std::vector<Range>& ranges) {
        Binding           b(r.slot_names.size());
        std::vector<bool> edge(r.slot_names.size(), false);
        run(r, ranges, 0, b, edge);
    }

    bool check(const CLit& l, const Binding& b) const {
        if (l.interval) {
            auto t  = eval(l.args[0], b);
            auto lo = eval(l.args[1], b);
            auto hi = eval(l.args[2], b);
            if (!t || !lo || !hi || !t->is_numeral() || !lo->is_numeral() || !hi->is_numeral()) return false;
            return lo->value() <= t->value() && t->value() <= hi->value();
        }
        auto x = eval(l.args[0], b);
        auto y = eval(l.args[1], b);
        return x && y && holds(l.rel, *x, *y);
    }

    // Numeric bound on `slot` implied by literal l under the binding, as [lo, hi].
    static void narrow(const CLit& l, int slot, const Binding& b, std::optional<std::int64_t>& lo,
                       std::optional<std::int64_t>& hi, bool& numerals_empty) {
        auto isolate = [&](const CTerm* side, Rel rel, const Symbol& value) {
            bound_side(side, rel, value, slot, b, lo, hi, numerals_empty);
        };
        if (l.interval) {
            if (!mentions(l.args[0], slot)) return;
            auto lov = eval(l.args[1], b);
            auto hiv = eval(l.args[2], b);
            if (!lov || !hiv || !lov->is_numeral() || !hiv->is_numeral()) {
                numerals_empty = true;
                return;
            }
            isolate(&l.args[0], Rel::Ge, *lov);
            isolate(&l.args[0], Rel::Le, *hiv);
            return;
        }
        bool in_l = mentions(l.args[0], slot), in_r = mentions(l.args[1], slot);
        if (in_l == in_r) return;
        auto other = eval(in_l ? l.args[1] : l.args[0], b);
        if (!other) return;
        isolate(in_l ? &l.args[0] : &l.args[1], in_l ? l.rel : mirror(l.rel), *other);
    }

    void run(CompiledRule& r, const std::vector<Range>& ranges, std::size_t si, Binding& b, std::vector<bool>& edge) {
        if (si == r.steps.size()) {
            emit(r, b, edge);
            return;
        }
        const Step& s = r.steps[si];
        switch (s.kind) {
            case Step::Kind::Check:
                if (check(r.lits[static_cast<std::size_t>(s.lit)], b)) run(r, ranges, si + 1, b, edge);
                return;
            case Step::Kind::Bind: {
                auto v = eval(s.term, b);
                if (!v) return;
                b[static_cast<std::size_t>(s.slot)] = *v;
                run(r, ranges, si + 1, b, edge);
                return;
            }
            case Step::Kind::Interval: {
                const CLit& l  = r.lits[static_cast<std::size_t>(s.lit)];
                auto        lo = eval(l.args[1], b);
                auto        hi = eval(l.args[2], b);
                if (!lo || !hi || !lo->is_numeral() || !hi->is_numeral()) return;
                if (hi->value() >= lo->value() && static_cast<std::uint64_t>(hi->value() - lo->value()) >= opt_.max_range) {
                    throw SearchSpaceTooLarge("interval " + to_string(*lo) + ".." + to_string(*hi) + " in rule " +
                                              std::to_string(r.index + 1) + " is too large to instantiate");
                }
                for (std::int64_t v = lo->value(); v <= hi->value(); ++v) {
                    b[static_cast<std::size_t>(s.slot)] = Symbol::numeral(v);
                    run(r, ranges, si + 1, b, edge);
                    if (v == INT64_MAX) break;
                }
                return;
            }
            case Step::Kind::Join: {
                const CLit&     l   = r.lits[static_cast<std::size_t>(s.lit)];
                const Relation& rel = rels_[static_cast<std::size_t>(l.relation)];
                auto [from, to]     = span(rel, ranges[static_cast<std::size_t>(s.lit)]);
                bool all_fixed = std::all_of(s.join_bind.begin(), s.join_bind.end(), [](int x) { return x < 0; });
                if (all_fixed) {
                    std::vector<Symbol> key;
                    for (const auto& a : l.args) {
                        auto v = eval(a, b);
                        if (!v) return;
                        key.push_back(*v);
                    }
                    auto it = rel.index.find(key);
                    if (it != rel.index.end() && it->second >= from && it->second < to) run(r, ranges, si + 1, b, edge);
                    return;
                }
                for (std::size_t ti = from; ti < to; ++ti) {
                    bool ok = true;
                    {
                        const auto& tup = rels_[static_cast<std::size_t>(l.relation)].tuples[ti];
                        for (std::size_t ai = 0; ai < l.args.size(); ++ai) {
                            if (s.join_bind[ai] >= 0) b[static_cast<std::size_t>(s.join_bind[ai])] = tup[ai];
                        }
                        for (std::size_t ai = 0; ai < l.args.size() && ok; ++ai) {
                            if (s.join_bind[ai] >= 0) continue;
                            auto v = eval(l.args[ai], b);
                            ok     = v && *v == tup[ai];
                        }
                    }
                    if (ok) run(r, ranges, si + 1, b, edge);
                }
                return;
            }
            case Step::Kind::Enumerate: {
                std::optional<std::int64_t> lo, hi;
                bool                        numerals_empty = false;
                for (int li : s.bounds) narrow(r.lits[static_cast<std::size_t>(li)], s.slot, b, lo, hi, numerals_empty);
                bool lo_window = !lo, hi_window = !hi;
                if (lo && hi && *hi >= *lo && static_cast<std::uint64_t>(*hi - *lo) >= opt_.max_range) {
                    lo_window = lo_window || *lo < opt_.window.lo;
                    hi_window = hi_window || *hi > opt_.window.hi;
                    lo        = std::max(*lo, opt_.window.lo);
                    hi        = std::min(*hi, opt_.window.hi);
                }
                std::int64_t from = lo.value_or(opt_.window.lo);
                std::int64_t to   = hi.value_or(opt_.window.hi);
                if (!numerals_empty) {
                    for (std::int64_t v = from; v <= to; ++v) {
                        b[static_cast<std::size_t>(s.slot)]    = Symbol::numeral(v);
                        edge[static_cast<std::size_t>(s.slot)] = (lo_window && v == from) || (hi_window && v == to);
                        run(r, ranges, si + 1, b, edge);
                        if (v == INT64_MAX) break;
                    }
                    edge[static_cast<std::size_t>(s.slot)] = false;
                }
                if (s.with_constants) {
                    for (const auto& c : constants_) {
                        b[static_cast<std::size_t>(s.slot)] = Symbol::constant(c);
                        run(r, ranges, si + 1, b, edge);
                    }
                }
                return;
            }
        }
    }

    std::optional<GroundAtom> instantiate(const std::string& pred, const std::vector<CTerm>& args, const Binding& b) const {
        GroundAtom a;
        a.predicate = pred;
        for (const auto& t : args) {
            auto v = eval(t, b);
            if (!v) return std::nullopt;
            a.args.push_back(*v);
        }
        return a;
    }

    void emit(const CompiledRule& r, const Binding& b, const std::vector<bool>& edge) {
        Instance in;
        in.rule = r.index;
        in.kind = r.kind;
        if (r.kind != Rule::Head::None) {
            in.head = instantiate(r.head_predicate, r.head_args, b);
            if (!in.head) return;
        }
        for (const auto& l : r.lits) {
            if (l.kind != BodyLiteral::Kind::Positive) continue;
            auto a = instantiate(l.predicate, l.args, b);
            if (!a) return;
            in.pos.push_back(std::move(*a));
        }
        for (int li : r.negatives) {
            const CLit& l = r.lits[static_cast<std::size_t>(li)];
            auto        a = instantiate(l.predicate, l.args, b);
            if (!a) return;
            in.neg.push_back(std::move(*a));
        }
        for (std::size_t s = 0; s < edge.size(); ++s) {
            if (edge[s] && warned_.insert(r.index).second) {
                warnings_.push_back("window_too_small: rule " + std::to_string(r.index + 1) + " `" +
                                    print_rule(prog_.rules[r.index]) + "` has instances with " + r.slot_names[s] +
                                    " at the edge of the integer window " + to_string(opt_.window));
            }
        }
        instances_.push_back(std::move(in));
    }

    bool possible(const GroundAtom& a) const {
        auto it = rel_ids_.find({a.predicate, a.args.size()});
        if (it == rel_ids_.end()) return false;
        return rels_[static_cast<std::size_t>(it->second)].index.count(a.args) != 0;
    }

    GroundProgram finish() {
        GroundProgram          g;
        std::set<GroundRule>   seen;
        for (const auto& in : instances_) {
            GroundRule gr;
            gr.kind = in.kind;
            if (in.head) gr.head = g.intern(*in.head);
            for (const auto& a : in.pos) gr.pos.push_back(g.intern(a));
            bool keep = true;
            for (const auto& a : in.neg) {
                if (opt_.fixed_domain || possible(a)) gr.neg.push_back(g.intern(a));
            }
            std::sort(gr.pos.begin(), gr.pos.end());
            gr.pos.erase(std::unique(gr.pos.begin(), gr.pos.end()), gr.pos.end());
            std::sort(gr.neg.begin(), gr.neg.end());
            gr.neg.erase(std::unique(gr.neg.begin(), gr.neg.end()), gr.neg.end());
            for (int a : gr.pos) {
                if (std::binary_search(gr.neg.begin(), gr.neg.end(), a)) keep = false;
            }
            if (keep && seen.insert(gr).second) g.rules.push_back(std::move(gr));
        }
        g.warnings = warnings_;
        return g;
    }

    const Program&                                            prog_;
    GroundOptions                                             opt_;
    std::set<std::string>                                     constants_;
    std::map<std::pair<std::string, std::size_t>, int>        rel_ids_;
    std::vector<Relation>                                     rels_;
    std::vector<CompiledRule>                                 rules_;
    std::vector<Instance>                                     instances_;
    std::size_t                                               pending_from_ = 0;
    std::set<std::size_t>                                     warned_;
    std::vector<std::string>                                  warnings_;
};

} // namespace detail

/// Instantiates `p`. Variables bound by positive atoms, equalities and
/// intervals take exactly the values those determine; any other variable
/// ranges over the numerals of the window (narrowed by the rule's
/// comparisons) and the symbolic constants. Substitutions that apply
/// arithmetic to a symbolic constant or overflow are discarded.
inline GroundProgram ground(const Program& p, const GroundOptions& opt) { return detail::Grounder(p, opt).run(); }

inline GroundProgram ground(const Program& p, IntWindow w, const std::set<std::string>& extra = {}) {
    GroundOptions opt;
    opt.window          = w;
    opt.extra_constants = extra;
    return ground(p, opt);
}

struct SafetyNote {
    std::size_t rule = 0;
    std::string variable;
};

/// Variables that no positive atom, equality or interval binds; the grounder
/// instantiates them over the integer window (narrowed by comparisons).
inline std::vector<SafetyNote> window_bound_variables(const Program& p) {
    GroundOptions     opt;
    detail::Grounder  g(p, opt);
    std::vector<SafetyNote> out;
    for (const auto& r : g.compiled()) {
        for (const auto& s : r.steps) {
            if (s.kind == detail::Step::Kind::Enumerate) out.push_back({r.index, r.slot_names[static_cast<std::size_t>(s.slot)]});
        }
    }
    return out;
}

} // namespace ncomp
