#include <catch_amalgamated.hpp>

#include "support/harness.hpp"

using namespace ncomp;

TEST_CASE("parse the even program") {
    auto p = parse_program("even(2*X) :- X = -10..10.");
    REQUIRE(p.rules.size() == 1);
    const auto& r = p.rules[0];
    CHECK(r.head_kind == Rule::Head::Basic);
    CHECK(r.head.predicate == "even");
    CHECK(r.head.args[0] == Term::binary(BinOp::Mul, Term::numeral(2), Term::variable("X")));
    REQUIRE(r.body.size() == 1);
    CHECK(r.body[0].cmp == Comparison::interval(Term::variable("X"), Term::numeral(-10), Term::numeral(10)));
    CHECK(print_program(p) == "even(2*X) :- X = -10..10.\n");
}

TEST_CASE("choice rules, constraints and comments") {
    auto p = parse_program("% comment\n{foo(X)} :- even(X).\n:- not foo(0). % trailing\n");
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].is_choice());
    CHECK(p.rules[1].is_constraint());
    CHECK(p.rules[1].body[0].kind == BodyLiteral::Kind::Negated);
}

TEST_CASE("non-regular constructs are rejected") {
    CHECK_THROWS_AS(parse_program("p(1..8,1..8)."), NonRegularError);
    CHECK_THROWS_AS(parse_program("p(X/2) :- q(X)."), NonRegularError);
    CHECK_THROWS_AS(parse_program("p(X) :- q(X), not not r(X)."), NonRegularError);
    CHECK_THROWS_AS(parse_program("p(1;2)."), NonRegularError);
    CHECK_THROWS_AS(parse_program("p(X) :- q(X) : r(X)."), NonRegularError);
    CHECK(parse_program("").empty());
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_program("p(1).\nq(X) :- p(X)\n", "f.lp");
        FAIL("expected a parse error");
    }
    catch (const ParseError& e) {
        CHECK(e.span().file == "f.lp");
        CHECK(e.span().line >= 2);
        CHECK(std::string(e.what()).find("f.lp:") == 0);
    }
}

TEST_CASE("parse formulas") {
    auto f9 = parse_formula("forall M N (b0(M,N) <-> 1 < M & M < N & M + N <= 100)");
    CHECK(alpha_equivalent(f9, parse_formula("forall M N (b0(M,N) <-> 1 < M < N & M + N <= 100)")));
    CHECK(f9.vars.size() == 2);
    CHECK(f9.vars[0].sort == Sort::Integer);
    auto t = parse_formula("exists I (I = I)");
    CHECK(t.is(Formula::Kind::Exists));
    CHECK(is_sentence(t));
    auto even_def = parse_formula("forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))");
    CHECK(print_formula(even_def, Style::Unicode) == "∀V(even(V) ↔ ∃I(-10 ≤ I ∧ I ≤ 10 ∧ V = 2*I))");
    CHECK(print_formula(fo::top(), Style::Ascii) == "true");
    CHECK_THROWS_AS(parse_formula("forall V (V = 2*V)"), SortError);
}

TEST_CASE("sort prefixes override the naming convention") {
    auto f = parse_formula("forall int:X (p(X) <-> X = 2*X)");
    CHECK(f.vars[0].sort == Sort::Integer);
    auto g = parse_formula("forall gen:M (p(M))");
    CHECK(g.vars[0].sort == Sort::General);
}

TEST_CASE("the puzzle program parses") {
    auto p = parse_program(puzzle_program_text);
    CHECK(p.rules.size() == 8);
    CHECK(parse_program(print_program(p)) == p);
}

TEST_CASE("program round trip on random programs") {
    gen::Rng rng(3);
    for (int k = 0; k < 300; ++k) {
        auto text = gen::random_program(rng);
        auto p    = parse_program(text);
        INFO(text);
        CHECK(parse_program(print_program(p)) == p);
    }
    for (const auto& e : corpus::programs()) {
        auto p = parse_program(e.text);
        CHECK(parse_program(print_program(p)) == p);
    }
}

TEST_CASE("formula round trip in ascii and unicode") {
    std::vector<Formula> fs;
    for (const auto& e : corpus::programs()) {
        auto p = parse_program(e.text);
        for (auto& f : ncomp::ncomp(p)) fs.push_back(f);
        for (auto& f : comp(p)) fs.push_back(f);
    }
    gen::Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        for (auto& f : parse_formulas(gen::random_chain(rng))) fs.push_back(f);
    }
    for (auto& f : parse_formulas(puzzle_axioms_text)) fs.push_back(f);
    for (const auto& f : fs) {
        for (auto style : {Style::Ascii, Style::Unicode}) {
            auto text = print_formula(f, style);
            INFO(text);
            CHECK(alpha_equivalent(parse_formula(text), f));
        }
    }
}

TEST_CASE("tptp output guards integer variables") {
    auto f = parse_formula("forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))");
    auto s = print_formula(f, Style::Tptp, "ax");
    CHECK(s.rfind("fof(ax", 0) == 0);
    CHECK(s.find("is_int") != std::string::npos);
}
