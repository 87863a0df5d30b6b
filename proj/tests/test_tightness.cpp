#include <catch_amalgamated.hpp>

#include "support/harness.hpp"

#include <map>

using namespace ncomp;

namespace {

// Acyclic iff repeatedly deleting vertices without outgoing edges empties the graph.
bool acyclic_by_leaf_elimination(const Program& p) {
    std::map<PredicateSymbol, std::set<PredicateSymbol>> out;
    for (const auto& r : p.rules) {
        for (const auto& l : r.body) {
            if (l.is_atom()) out[signature(l.atom)];
        }
        if (!r.has_head()) continue;
        auto& succ = out[signature(r.head)];
        for (const auto& l : r.body) {
            if (l.kind == BodyLiteral::Kind::Positive) succ.insert(signature(l.atom));
        }
    }
    bool removed = true;
    while (removed && !out.empty()) {
        removed = false;
        for (auto it = out.begin(); it != out.end();) {
            bool leaf = true;
            for (const auto& q : it->second) leaf = leaf && !out.count(q);
            if (leaf) {
                it      = out.erase(it);
                removed = true;
            }
            else {
                ++it;
            }
        }
    }
    return out.empty();
}

} // namespace

TEST_CASE("dependency graphs") {
    auto g = dependency_graph(parse_program("even(2*X) :- X = -10..10.\n{foo(X)} :- even(X).\n:- not foo(0)."));
    REQUIRE(g.edges.size() == 1);
    CHECK(g.has_edge({"foo", 1}, {"even", 1}));
    CHECK(dependency_graph(parse_program("p :- not q.\nq :- not p.")).edges.empty());
    auto loop = dependency_graph(parse_program("p :- p."));
    REQUIRE(loop.edges.size() == 1);
    CHECK(loop.has_edge({"p", 0}, {"p", 0}));
    CHECK(to_dot(loop) == "digraph dependencies {\n  \"p/0\";\n  \"p/0\" -> \"p/0\";\n}\n");
}

TEST_CASE("tightness") {
    CHECK(is_tight(parse_program("even(2*X) :- X = -10..10.\n{foo(X)} :- even(X).\n:- not foo(0).")).tight);
    auto loop = is_tight(parse_program("p :- p."));
    CHECK_FALSE(loop.tight);
    CHECK(loop.cycle == std::vector<PredicateSymbol>{{"p", 0}});
    CHECK(is_tight(parse_program(puzzle_program_text)).tight);
    auto two = is_tight(parse_program("b :- a.\na :- b.\nc :- c, a."));
    CHECK_FALSE(two.tight);
    CHECK(two.cycle == std::vector<PredicateSymbol>{{"c", 0}});
    auto pair = is_tight(parse_program("b :- a.\na :- b."));
    CHECK(pair.cycle == std::vector<PredicateSymbol>{{"a", 0}, {"b", 0}});
}

TEST_CASE("tightness agrees with leaf elimination on random programs") {
    gen::Rng rng(41);
    for (int k = 0; k < 500; ++k) {
        auto text = gen::random_program(rng);
        auto p    = parse_program(text);
        INFO(text);
        auto r = is_tight(p);
        CHECK(r.tight == acyclic_by_leaf_elimination(p));
        if (r.tight) continue;
        REQUIRE_FALSE(r.cycle.empty());
        auto g = dependency_graph(p);
        for (std::size_t i = 0; i < r.cycle.size(); ++i) {
            CHECK(g.has_edge(r.cycle[i], r.cycle[(i + 1) % r.cycle.size()]));
        }
    }
}

TEST_CASE("constraints never change tightness") {
    gen::Rng rng(42);
    for (int k = 0; k < 200; ++k) {
        auto p = parse_program(gen::random_program(rng));
        auto q = p;
        q.rules.push_back(parse_program(":- p0(X), p0(X), not p1.").rules[0]);
        CHECK(is_tight(p).tight == is_tight(q).tight);
    }
}
