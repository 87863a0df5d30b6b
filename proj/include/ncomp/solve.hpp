#pragma once

#include "ground.hpp"
#include "sat.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace ncomp {

/// A stable model: its atoms sorted by predicate, arity, then arguments.
using StableModel = std::vector<GroundAtom>;

enum class Method : std::uint8_t { Auto, Brute, Completion, Stratified };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Brute: return "brute";
        case Method::Completion: return "completion";
        case Method::Stratified: return "stratified";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    for (auto m : {Method::Auto, Method::Brute, Method::Completion, Method::Stratified}) {
        if (s == to_string(m)) return m;
    }
    throw Error("unknown method '" + s + "' (expected auto, brute, completion or stratified)");
}

namespace detail {

inline std::vector<bool> least_model_of_reduct(const GroundProgram& g, const std::vector<bool>& s) {
    std::size_t                           n = g.atoms.size();
    std::vector<bool>                     m(n, false);
    std::vector<std::size_t>              missing(g.rules.size(), 0);
    std::vector<std::vector<std::size_t>> watch(n);
    std::vector<int>                      queue;
    auto fire = [&](const GroundRule& r) {
        auto h = static_cast<std::size_t>(r.head);
        if (!m[h]) {
            m[h] = true;
            queue.push_back(r.head);
        }
    };
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const auto& r = g.rules[i];
        if (r.is_constraint()) continue;
        if (r.is_choice() && !s[static_cast<std::size_t>(r.head)]) continue;
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return s[static_cast<std::size_t>(a)]; })) continue;
        missing[i] = r.pos.size();
        for (int a : r.pos) watch[static_cast<std::size_t>(a)].push_back(i);
        if (r.pos.empty()) fire(r);
    }
    while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        for (auto i : watch[static_cast<std::size_t>(a)]) {
            if (--missing[i] == 0) fire(g.rules[i]);
        }
    }
    return m;
}

inline bool violates_constraint(const GroundProgram& g, const std::vector<bool>& s) {
    for (const auto& r : g.rules) {
        if (!r.is_constraint()) continue;
        bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return s[static_cast<std::size_t>(a)]; }) &&
                    std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return s[static_cast<std::size_t>(a)]; });
        if (body) return true;
    }
    return false;
}

inline StableModel to_model(const GroundProgram& g, const std::vector<bool>& s) {
    StableModel m;
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        if (s[i]) m.push_back(g.atoms[i]);
    }
    std::sort(m.begin(), m.end());
    return m;
}

// Strongly connected components of the atom graph (edges head -> body atoms,
// positive and optionally negative), dependencies first.
inline std::vector<int> atom_components(const GroundProgram& g, bool with_negative, std::size_t& count) {
    std::size_t                   n = g.atoms.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& r : g.rules) {
        if (r.head < 0) continue;
        auto h = static_cast<std::size_t>(r.head);
        adj[h].insert(adj[h].end(), r.pos.begin(), r.pos.end());
        if (with_negative) adj[h].insert(adj[h].end(), r.neg.begin(), r.neg.end());
    }
    std::vector<int>  idx(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on(n, false);
    int               counter = 0;
    count                     = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (idx[root] >= 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(static_cast<int>(root));
        on[root] = true;
        while (!frames.empty()) {
            auto& [v, e] = frames.back();
            if (e < adj[v].size()) {
                auto w = static_cast<std::size_t>(adj[v][e++]);
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(static_cast<int>(w));
                    on[w] = true;
                    frames.emplace_back(w, 0);
                }
                else if (on[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
                continue;
            }
            if (low[v] == idx[v]) {
                int w = -1;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[static_cast<std::size_t>(w)]   = false;
                    comp[static_cast<std::size_t>(w)] = static_cast<int>(count);
                } while (static_cast<std::size_t>(w) != v);
                ++count;
            }
            auto finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                auto up = frames.back().first;
                low[up] = std::min(low[up], low[finished]);
            }
        }
    }
    return comp;
}

} // namespace detail

/// True iff `s` (a membership vector over g.atoms) is the least model of the
/// reduct of g relative to s and violates no constraint. A choice instance
/// {a} :- B behaves as a :- B, not not a.
inline bool is_stable(const GroundProgram& g, const std::vector<bool>& s) {
    if (detail::violates_constraint(g, s)) return false;
    return detail::least_model_of_reduct(g, s) == s;
}

inline bool is_stable(const GroundProgram& g, const std::set<GroundAtom>& s) {
    std::vector<bool> in(g.atoms.size(), false);
    for (const auto& a : s) {
        auto id = g.find(a);
        if (!id) return false;
        in[static_cast<std::size_t>(*id)] = true;
    }
    return is_stable(g, in);
}

/// Why a method cannot be used on g, or empty if it can.
inline std::string inapplicability(const GroundProgram& g, Method m) {
    if (m == Method::Stratified) {
        for (const auto& r : g.rules) {
            if (r.is_choice()) return "program has choice rules";
        }
        std::size_t count = 0;
        auto        comp  = detail::atom_components(g, true, count);
        for (const auto& r : g.rules) {
            if (r.head < 0) continue;
            for (int a : r.neg) {
                if (comp[static_cast<std::size_t>(a)] == comp[static_cast<std::size_t>(r.head)]) {
                    return "atom " + to_string(g.atoms[static_cast<std::size_t>(a)]) + " depends negatively on itself";
                }
            }
        }
        return {};
    }
    if (m == Method::Completion) {
        std::size_t count = 0;
        auto        comp  = detail::atom_components(g, false, count);
        for (const auto& r : g.rules) {
            if (r.head < 0) continue;
            for (int a : r.pos) {
                if (comp[static_cast<std::size_t>(a)] == comp[static_cast<std::size_t>(r.head)]) {
                    return "program is not tight: atom " + to_string(g.atoms[static_cast<std::size_t>(a)]) +
                           " depends positively on itself";
                }
            }
        }
        return {};
    }
    if (m == Method::Brute) {
        std::size_t heads = 0;
        for (bool h : g.head_mask()) heads += h;
        if (heads > 26) return "brute force over " + std::to_string(heads) + " head atoms is too large";
    }
    return {};
}

namespace detail {

using ModelSink = std::function<void(const std::vector<bool>&)>;

inline void brute(const GroundProgram& g, const ModelSink& sink) {
    std::vector<int> heads;
    auto             mask = g.head_mask();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) heads.push_back(static_cast<int>(i));
    }
    std::vector<bool> s(g.atoms.size(), false);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << heads.size()); ++bits) {
        for (std::size_t k = 0; k < heads.size(); ++k) s[static_cast<std::size_t>(heads[k])] = (bits >> k) & 1;
        if (is_stable(g, s)) sink(s);
    }
}

inline void stratified(const GroundProgram& g, const ModelSink& sink) {
    std::size_t count = 0;
    auto        comp  = atom_components(g, true, count);
    std::vector<std::vector<std::size_t>> by_comp(count);
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        if (g.rules[i].head >= 0) by_comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(g.rules[i].head)])].push_back(i);
    }
    std::vector<bool> s(g.atoms.size(), false);
    // Component ids are assigned dependencies first.
    for (std::size_t c = 0; c < count; ++c) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto i : by_comp[c]) {
                const auto& r = g.rules[i];
                if (s[static_cast<std::size_t>(r.head)]) continue;
                bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return s[static_cast<std::size_t>(a)]; }) &&
                            std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return s[static_cast<std::size_t>(a)]; });
                if (body) {
                    s[static_cast<std::size_t>(r.head)] = true;
                    changed                             = true;
                }
            }
        }
    }
    if (!violates_constraint(g, s)) sink(s);
}

// Body variables are determined by the atoms, so each model is reported once.
inline void by_completion(const GroundProgram& g, const ModelSink& sink) {
    std::size_t n = g.atoms.size();
    SatSolver   sat(n + g.rules.size());
    auto        atom = [](int a) { return a + 1; };
    std::vector<std::vector<int>> support(n);
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const auto& r = g.rules[i];
        int         b = static_cast<int>(n + i) + 1;
        // b <-> conjunction of the body literals
        std::vector<int> back{b};
        for (int a : r.pos) {
            sat.add_clause({-b, atom(a)});
            back.push_back(-atom(a));
        }
        for (int a : r.neg) {
            sat.add_clause({-b, -atom(a)});
            back.push_back(atom(a));
        }
        sat.add_clause(back);
        if (r.is_constraint()) sat.add_clause({-b});
        else {
            if (!r.is_choice()) sat.add_clause({-b, atom(r.head)});
            support[static_cast<std::size_t>(r.head)].push_back(b);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<int> c{-atom(static_cast<int>(a))};
        c.insert(c.end(), support[a].begin(), support[a].end());
        sat.add_clause(c);
    }
    sat.enumerate([&](const std::vector<bool>& v) { sink(std::vector<bool>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n))); });
}

} // namespace detail

inline Method resolve(const GroundProgram& g, Method m) {
    if (m == Method::Auto) {
        if (inapplicability(g, Method::Stratified).empty()) m = Method::Stratified;
        else if (inapplicability(g, Method::Completion).empty()) m = Method::Completion;
        else m = Method::Brute;
    }
    if (auto why = inapplicability(g, m); !why.empty()) {
        throw MethodInapplicable(std::string("method ") + to_string(m) + " is not applicable: " + why);
    }
    return m;
}

/// Calls `sink` once per stable model, as a membership vector over g.atoms,
/// in no particular order. Returns the number of models.
inline std::size_t for_each_stable_model(const GroundProgram& g, Method m,
                                         const std::function<void(const std::vector<bool>&)>& sink) {
    std::size_t count = 0;
    auto        each  = [&](const std::vector<bool>& s) {
        ++count;
        sink(s);
    };
    switch (resolve(g, m)) {
        case Method::Brute: detail::brute(g, each); break;
        case Method::Stratified: detail::stratified(g, each); break;
        case Method::Completion: detail::by_completion(g, each); break;
        case Method::Auto: break;
    }
    return count;
}

/// Every stable model of g, sorted. `Auto` uses the stratified evaluation when
/// applicable, otherwise the completion when g is tight, otherwise brute force.
inline std::vector<StableModel> stable_models(const GroundProgram& g, Method m = Method::Auto) {
    std::vector<StableModel> out;
    for_each_stable_model(g, m, [&](const std::vector<bool>& s) { out.push_back(detail::to_model(g, s)); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// One line, atoms separated by spaces.
inline std::string format_model(const StableModel& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? " " : "") + to_string(m[i]);
    return out;
}

} // namespace ncomp
