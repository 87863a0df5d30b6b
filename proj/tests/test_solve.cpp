#include <catch_amalgamated.hpp>

#include "support/harness.hpp"

using namespace ncomp;

namespace {

std::set<GroundAtom> atoms(std::initializer_list<const char*> names) {
    std::set<GroundAtom> out;
    for (auto n : names) out.insert({n, {}});
    return out;
}

bool all_stable(const GroundProgram& g, const std::vector<StableModel>& ms) {
    for (const auto& m : ms) {
        if (!is_stable(g, std::set<GroundAtom>(m.begin(), m.end()))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("grounding the even program") {
    auto g = ground(parse_program("even(2*X) :- X = -10..10."), IntWindow{-1000, 1000});
    std::set<GroundAtom> expected;
    for (int i = -10; i <= 10; ++i) expected.insert({"even", {Symbol::numeral(2 * i)}});
    CHECK(std::set<GroundAtom>(g.atoms.begin(), g.atoms.end()) == expected);
    CHECK(g.rules.size() == 21);
    for (const auto& r : g.rules) CHECK((r.pos.empty() && r.neg.empty() && r.head >= 0));
}

TEST_CASE("ill-formed substitutions are discarded") {
    auto g = ground(parse_program("p(X) :- X = a, X = 1..3."), IntWindow{0, 5});
    CHECK(g.rules.empty());
    auto h = ground(parse_program("q(a). q(1). p(X+1) :- q(X)."), IntWindow{0, 5});
    CHECK(h.find({"p", {Symbol::numeral(2)}}));
    CHECK(h.atoms.size() == 3);
    CHECK(ground(Program{}, IntWindow{}).empty());
}

TEST_CASE("default windows") {
    CHECK(default_window(parse_program("p(3). q(X) :- X = -2..1.")) == IntWindow{-3, 4});
    CHECK(default_window(Program{}) == IntWindow{-1, 1});
    CHECK(parse_window("-2..7") == IntWindow{-2, 7});
    CHECK_THROWS_AS(parse_window("7"), Error);
}

TEST_CASE("stability checks") {
    auto two = ground(parse_program("p :- not q.\nq :- not p."), IntWindow{});
    CHECK(is_stable(two, atoms({"p"})));
    CHECK_FALSE(is_stable(two, atoms({"p", "q"})));
    CHECK_FALSE(is_stable(two, atoms({})));
    auto loop = ground(parse_program("p :- p."), IntWindow{});
    CHECK_FALSE(is_stable(loop, atoms({"p"})));
    CHECK(is_stable(loop, atoms({})));
    auto definite = ground(parse_program("a. b :- a. c :- b, d."), IntWindow{});
    CHECK(is_stable(definite, atoms({"a", "b"})));
}

TEST_CASE("stable models of small programs") {
    auto two = stable_models(ground(parse_program("p :- not q.\nq :- not p."), IntWindow{}));
    CHECK(harness::as_sets(two) == std::set<std::set<GroundAtom>>{atoms({"p"}), atoms({"q"})});
    auto loop = stable_models(ground(parse_program("p :- p."), IntWindow{}));
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].empty());
    CHECK(stable_models(ground(parse_program("p :- not p."), IntWindow{})).empty());
}

TEST_CASE("the foo program has one model per subset of the nonzero even numbers") {
    auto p = parse_program("even(2*X) :- X = -10..10.\n{foo(X)} :- even(X).\n:- not foo(0).");
    auto g = ground(p, IntWindow{-2, 2});
    std::size_t count = 0;
    bool        ok    = true;
    auto        n     = for_each_stable_model(g, Method::Auto, [&](const std::vector<bool>& s) {
        auto m = detail::to_model(g, s);
        ++count;
        std::set<GroundAtom> in(m.begin(), m.end());
        ok = ok && in.count({"foo", {Symbol::numeral(0)}});
        for (const auto& a : m) {
            if (a.predicate == "foo") ok = ok && in.count({"even", a.args});
        }
    });
    CHECK(n == std::size_t{1} << 20);
    CHECK(count == n);
    CHECK(ok);

    auto small = ground(parse_program("even(2*X) :- X = -1..1.\n{foo(X)} :- even(X).\n:- not foo(0)."), IntWindow{-3, 3});
    auto ms    = stable_models(small, Method::Brute);
    CHECK(ms.size() == 4);
    CHECK(stable_models(small, Method::Completion) == ms);
}

TEST_CASE("methods") {
    CHECK(parse_method("brute") == Method::Brute);
    CHECK_THROWS_AS(parse_method("fast"), Error);
    auto loop = ground(parse_program("a :- b.\nb :- a.\na :- not c.\nc :- not a."), IntWindow{});
    CHECK_THROWS_AS(stable_models(loop, Method::Completion), MethodInapplicable);
    auto odd = ground(parse_program("p :- not q.\nq :- not p."), IntWindow{});
    CHECK_THROWS_AS(stable_models(odd, Method::Stratified), MethodInapplicable);
    CHECK(resolve(odd, Method::Auto) != Method::Stratified);
    auto strat = ground(parse_program("c.\nb :- not c.\na :- not b."), IntWindow{});
    CHECK(resolve(strat, Method::Auto) == Method::Stratified);
    CHECK(format_model({{"a", {}}, {"p", {Symbol::numeral(1), Symbol::constant("b")}}}) == "a p(1,b)");
}

TEST_CASE("solvers agree with each other and with the naive oracle") {
    for (const auto& c : harness::full_corpus(60, 99)) {
        INFO(c.name << "\n" << c.text);
        auto g     = ground(c.program, c.window);
        auto brute = stable_models(g, Method::Brute);
        CHECK(all_stable(g, brute));
        CHECK(stable_models(g) == brute);
        if (is_tight(c.program).tight && harness::head_atoms(g) <= 12) CHECK(stable_models(g, Method::Completion) == brute);
        if (inapplicability(g, Method::Stratified).empty()) CHECK(stable_models(g, Method::Stratified) == brute);
        if (auto ng = harness::naive_grounding(c)) CHECK(oracle::naive_stable_models(*ng) == harness::as_sets(brute));
    }
}

TEST_CASE("models of programs without choice rules form an antichain") {
    for (const auto& c : harness::full_corpus(60, 98)) {
        if (std::any_of(c.program.rules.begin(), c.program.rules.end(), [](const Rule& r) { return r.is_choice(); })) continue;
        auto ms = harness::as_sets(stable_models(ground(c.program, c.window)));
        for (const auto& a : ms) {
            for (const auto& b : ms) {
                if (a != b) CHECK_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
            }
        }
    }
}

TEST_CASE("enlarging the window keeps models when no variable depends on it") {
    for (const auto& c : harness::full_corpus(30, 97)) {
        if (!window_bound_variables(c.program).empty()) continue;
        auto small = stable_models(ground(c.program, c.window));
        auto large = stable_models(ground(c.program, IntWindow{c.window.lo - 5, c.window.hi + 5}));
        INFO(c.name);
        CHECK(small == large);
    }
    auto windowed = parse_program("p(X) :- X > 0, not q(X).");
    CHECK_FALSE(window_bound_variables(windowed).empty());
    auto small = harness::as_sets(stable_models(ground(windowed, IntWindow{0, 2})));
    auto large = harness::as_sets(stable_models(ground(windowed, IntWindow{0, 4})));
    REQUIRE(small.size() == 1);
    REQUIRE(large.size() == 1);
    CHECK(std::includes(large.begin()->begin(), large.begin()->end(), small.begin()->begin(), small.begin()->end()));
}

TEST_CASE("the puzzle") {
    auto r = solve_puzzle();
    CHECK(r.models == 1);
    CHECK(r.solved());
    CHECK(r.b3 == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 13}});
    std::size_t b0 = 0;
    for (int m = 2; m < 100; ++m) {
        for (int n = m + 1; m + n <= 100; ++n) ++b0;
    }
    CHECK(r.extents["b0"] == b0);
    CHECK(r.extents["b3"] == 1);
    std::set<GroundAtom> model(r.model.begin(), r.model.end());
    for (const auto& a : r.model) {
        if (a.predicate == "b3") CHECK(model.count({"b2", a.args}));
    }
}
