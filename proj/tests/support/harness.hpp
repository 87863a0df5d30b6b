#pragma once

#include "corpus.hpp"
#include "generators.hpp"
#include "oracle.hpp"

#include <ncomp/ncomp.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace harness {

struct Case {
    std::string           name;
    std::string           text;
    ncomp::Program        program;
    ncomp::IntWindow      window;
    std::set<std::string> constants;
};

inline std::size_t head_atoms(const ncomp::GroundProgram& g) {
    std::size_t n = 0;
    for (bool b : g.head_mask()) n += b;
    return n;
}

/// Hand-written programs followed by `random` generated ones that ground to
/// between 2 and 14 head atoms.
inline std::vector<Case> full_corpus(std::size_t random = 20, std::uint64_t seed = 7) {
    std::vector<Case> out;
    for (const auto& e : corpus::programs()) {
        auto p = ncomp::parse_program(e.text, e.name);
        out.push_back({e.name, e.text, p, e.window, ncomp::program_constants(p)});
    }
    gen::Rng    rng(seed);
    std::size_t made = 0;
    while (made < random) {
        std::string text = gen::random_program(rng);
        try {
            auto p = ncomp::parse_program(text, "random");
            auto g = ncomp::ground(p, gen::random_program_window);
            if (head_atoms(g) > 14 || head_atoms(g) < 2 || !ncomp::window_bound_variables(p).empty()) continue;
            out.push_back({"random" + std::to_string(++made), text, p, gen::random_program_window, ncomp::program_constants(p)});
        }
        catch (const ncomp::Error&) {
            continue;
        }
    }
    return out;
}

inline std::set<std::set<ncomp::GroundAtom>> as_sets(const std::vector<ncomp::StableModel>& ms) {
    std::set<std::set<ncomp::GroundAtom>> out;
    for (const auto& m : ms) out.emplace(m.begin(), m.end());
    return out;
}

/// Ground program of the naive oracle, or nothing when its domain cannot be
/// shown to cover the library's grounding.
inline std::optional<std::set<oracle::NaiveRule>> naive_grounding(const Case& c) {
    bool windowed = !ncomp::window_bound_variables(c.program).empty();
    auto dom      = windowed ? oracle::domain(c.window.lo, c.window.hi, c.constants) : oracle::domain(-8, 40, c.constants);
    auto g        = ncomp::ground(c.program, c.window);
    std::set<ncomp::Symbol> in(dom.begin(), dom.end());
    for (const auto& a : g.atoms) {
        for (const auto& t : a.args) {
            if (!in.count(t)) return std::nullopt;
        }
    }
    return oracle::naive_ground(c.program, dom);
}

} // namespace harness
