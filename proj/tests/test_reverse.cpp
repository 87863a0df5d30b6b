#include <catch_amalgamated.hpp>

#include "support/harness.hpp"

using namespace ncomp;

TEST_CASE("axiom chains") {
    auto chain = parse_axiom_chain(parse_formulas(puzzle_axioms_text));
    REQUIRE(chain.size() == 8);
    std::vector<std::string> names;
    for (const auto& d : chain) names.push_back(d.predicate);
    CHECK(names == std::vector<std::string>{"b0", "puzzling0", "possibly_easy", "b1", "puzzling1", "b2", "puzzling2", "b3"});
    CHECK(chain[0].head_vars == std::vector<Var>{{"M", Sort::Integer}, {"N", Sort::Integer}});

    CHECK(parse_axiom_chain({}).empty());
    CHECK_THROWS_AS(parse_axiom_chain(parse_formulas("forall M (q(M) <-> q(M)).")), NotADefinition);
    CHECK_THROWS_AS(parse_axiom_chain(parse_formulas("forall M (q(M) <-> r(M)).\nforall M (r(M) <-> M = 1).")), NotADefinition);
    CHECK_THROWS_AS(parse_axiom_chain(parse_formulas("forall M (q(M,M) <-> M = 1).")), NotADefinition);
    CHECK_THROWS_AS(parse_axiom_chain(parse_formulas("forall M (q(M) <-> M = N).")), NotADefinition);
    CHECK_THROWS_AS(parse_axiom_chain(parse_formulas("forall M (q(M) -> M = 1).")), NotADefinition);
    CHECK_THROWS_AS(parse_axiom_chain(parse_formulas("forall M (q(M) <-> M = 1).\nforall M (q(M) <-> M = 2).")), NotADefinition);
}

TEST_CASE("renaming for generality") {
    CHECK(variable_rename_for_generality({"M", Sort::Integer}) == Var{"XM", Sort::General});
    CHECK(variable_rename_for_generality({"N", Sort::Integer}) == Var{"XN", Sort::General});
    CHECK(variable_rename_for_generality({"J1", Sort::Integer}) == Var{"XJ1", Sort::General});
}

TEST_CASE("reversing the puzzle axioms gives the puzzle program") {
    auto p = reverse_completion(parse_axiom_chain(parse_formulas(puzzle_axioms_text)));
    CHECK(equal_up_to_renaming(p, parse_program(puzzle_program_text)));
    CHECK(is_tight(p).tight);
    auto r = solve_puzzle(p);
    CHECK(r.b3 == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 13}});
}

TEST_CASE("reversing small definitions") {
    auto even = reverse_completion(parse_axiom_chain(parse_formulas("forall N (even(N) <-> exists I (-10 <= I & I <= 10 & N = 2*I)).")));
    REQUIRE(even.rules.size() == 1);
    CHECK(equal_up_to_renaming(even, parse_program("even(XN) :- -10 <= I, I <= 10, XN = 2*I.")));

    auto neg = reverse_completion(parse_axiom_chain(parse_formulas("forall M (p(M) <-> M = 1).\nforall M (q(M) <-> ~p(M) & ~M > 3 & M >= 0).")));
    REQUIRE(neg.rules.size() == 2);
    CHECK(equal_up_to_renaming(neg, parse_program("p(XM) :- XM = 1.\nq(XM) :- not p(XM), XM <= 3, XM >= 0.")));

    CHECK_THROWS_AS(reverse_completion(parse_axiom_chain(parse_formulas("forall M (p(M) <-> M = 1).\nforall M (q(M) <-> ~exists N (p(N) & N < M))."))),
                    UnsupportedShape);
    CHECK_THROWS_AS(reverse_completion(parse_axiom_chain(parse_formulas("forall M (p(M) <-> M = 1 | M = 2)."))), UnsupportedShape);
}

TEST_CASE("reversed chains are tight and agree with their axioms") {
    gen::Rng  rng(61);
    IntWindow w{0, 6};
    for (int k = 0; k < 25; ++k) {
        auto text = gen::random_chain(rng);
        INFO(text);
        auto defs = parse_axiom_chain(parse_formulas(text));
        auto p    = reverse_completion(defs);
        CHECK(is_tight(p).tight);
        CHECK(p.rules.size() == defs.size());
        std::vector<PredicateSymbol> preds;
        for (const auto& d : defs) preds.push_back(d.symbol());
        for (int t = 0; t < 40; ++t) {
            auto                   in = gen::random_interpretation(rng, preds, w, {});
            oracle::NaiveEvaluator naive(in.atoms(), in.window(), in.constants());
            for (const auto& d : defs) {
                auto completed = arithmetic_completed_definition(p, d.symbol());
                auto r         = eval(in, completed);
                if (r.boundary) continue;
                CHECK(r.value == naive(d.sentence));
            }
        }
    }
}

TEST_CASE("the unique stable model of a reversed chain satisfies the axioms") {
    gen::Rng rng(62);
    for (int k = 0; k < 10; ++k) {
        auto text = gen::random_chain(rng);
        INFO(text);
        auto defs = parse_axiom_chain(parse_formulas(text));
        auto p    = reverse_completion(defs);
        auto ms   = stable_models(ground(p, IntWindow{0, 20}));
        REQUIRE(ms.size() == 1);
        std::set<GroundAtom> s(ms[0].begin(), ms[0].end());
        auto                 in = lift(s, hull(IntWindow{0, 20}, s), {});
        for (const auto& d : defs) {
            auto r = eval(in, d.sentence);
            if (!r.boundary) CHECK(r.value);
        }
    }
}

TEST_CASE("interval rewriting") {
    auto p = rewrite_intervals(parse_program(puzzle_program_text));
    CHECK(print_rule(p.rules[0]) == "b0(XM,XN) :- XM = 2..XN - 1, XM + XN <= 100.");
    CHECK(window_bound_variables(p).size() == 1);
    CHECK(solve_puzzle(p).b3 == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 13}});

    auto symbolic = parse_program("q(a). q(3). p(X) :- 1 < X, X < Y, q(Y).");
    CHECK(rewrite_intervals(symbolic) == symbolic);
    auto general_upper = parse_program("q(a). p(X) :- 1 <= X, X < Y, q(Y), r(X+1).");
    CHECK(rewrite_intervals(general_upper) == general_upper);
    CHECK(print_rule(rewrite_intervals(parse_program("p(X) :- X >= 0, 5 > X, r(X*2).")).rules[0]) == "p(X) :- X = 0..4, r(X*2).");
}

TEST_CASE("interval rewriting keeps stable models") {
    gen::Rng    rng(63);
    std::size_t rewritten = 0;
    for (int k = 0; k < 200; ++k) {
        auto text = gen::random_bounded_program(rng);
        INFO(text);
        auto p = parse_program(text);
        auto q = rewrite_intervals(p);
        INFO(print_program(q));
        if (q != p) ++rewritten;
        IntWindow w{-5, 60};
        CHECK(stable_models(ground(p, w)) == stable_models(ground(q, w)));
    }
    CHECK(rewritten > 50);
}
