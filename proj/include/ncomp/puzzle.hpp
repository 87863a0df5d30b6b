#pragma once

#include "ground.hpp"
#include "parser.hpp"
#include "solve.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ncomp {

/// The Sum and Product puzzle as a regular program.
inline constexpr const char* puzzle_program_text =
    "b0(XM,XN) :- 1 < XM, XM < XN, XM + XN <= 100.\n"
    "puzzling0(XI) :- b0(XJ1,XK1), b0(XJ2,XK2), XI = XJ1*XK1, XJ1*XK1 = XJ2*XK2, XJ1 != XJ2.\n"
    "possibly_easy(XI) :- b0(XJ,XK), XI = XJ + XK, not puzzling0(XJ*XK).\n"
    "b1(XM,XN) :- b0(XM,XN), not possibly_easy(XM + XN).\n"
    "puzzling1(XI) :- b1(XJ1,XK1), b1(XJ2,XK2), XI = XJ1*XK1, XJ1*XK1 = XJ2*XK2, XJ1 != XJ2.\n"
    "b2(XM,XN) :- b1(XM,XN), not puzzling1(XM*XN).\n"
    "puzzling2(XI) :- b2(XJ1,XK1), b2(XJ2,XK2), XI = XJ1 + XK1, XJ1 + XK1 = XJ2 + XK2, XJ1 != XJ2.\n"
    "b3(XM,XN) :- b2(XM,XN), not puzzling2(XM + XN).\n";

/// The same puzzle as a chain of first-order definitions over the integers.
inline constexpr const char* puzzle_axioms_text =
    "forall M N (b0(M,N) <-> 1 < M < N & M + N <= 100).\n"
    "forall I (puzzling0(I) <-> exists J1 K1 J2 K2 (b0(J1,K1) & b0(J2,K2) & I = J1*K1 = J2*K2 & J1 != J2)).\n"
    "forall I (possibly_easy(I) <-> exists J K (b0(J,K) & I = J + K & ~puzzling0(J*K))).\n"
    "forall M N (b1(M,N) <-> b0(M,N) & ~possibly_easy(M + N)).\n"
    "forall I (puzzling1(I) <-> exists J1 K1 J2 K2 (b1(J1,K1) & b1(J2,K2) & I = J1*K1 = J2*K2 & J1 != J2)).\n"
    "forall M N (b2(M,N) <-> b1(M,N) & ~puzzling1(M*N)).\n"
    "forall I (puzzling2(I) <-> exists J1 K1 J2 K2 (b2(J1,K1) & b2(J2,K2) & I = J1 + K1 = J2 + K2 & J1 != J2)).\n"
    "forall M N (b3(M,N) <-> b2(M,N) & ~puzzling2(M + N)).\n";

inline constexpr IntWindow puzzle_window{2, 2500};

struct PuzzleResult {
    std::size_t                                     models = 0;
    StableModel                                     model; // the first model, if any
    std::map<std::string, std::size_t>              extents;
    std::vector<std::pair<std::int64_t, std::int64_t>> b3;

    bool solved() const { return models == 1 && b3 == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 13}}; }
};

inline PuzzleResult solve_puzzle(const Program& p, IntWindow w = puzzle_window, Method m = Method::Auto) {
    GroundProgram g      = ground(p, w);
    auto          models = stable_models(g, m);
    PuzzleResult  out;
    out.models = models.size();
    for (const auto& sym : predicate_symbols(p)) out.extents[sym.name] = 0;
    if (models.empty()) return out;
    out.model = models.front();
    for (const auto& a : out.model) {
        ++out.extents[a.predicate];
        if (a.predicate == "b3" && a.args.size() == 2 && a.args[0].is_numeral() && a.args[1].is_numeral()) {
            out.b3.emplace_back(a.args[0].value(), a.args[1].value());
        }
    }
    return out;
}

inline PuzzleResult solve_puzzle() { return solve_puzzle(parse_program(puzzle_program_text, "<puzzle>")); }

} // namespace ncomp
