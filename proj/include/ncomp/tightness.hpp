#pragma once

#include "program.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ncomp {

/// Positive predicate dependency graph: an edge p -> q for every rule with
/// head predicate p and a positive body atom with predicate q.
struct DependencyGraph {
    struct Edge {
        std::size_t              from = 0;
        std::size_t              to   = 0;
        std::vector<std::size_t> rules; // indices of the rules inducing the edge

        friend bool operator==(const Edge&, const Edge&) = default;
    };

    std::vector<PredicateSymbol> vertices; // in order of first occurrence
    std::vector<Edge>            edges;    // sorted by (from, to) vertex order

    std::optional<std::size_t> index(const PredicateSymbol& p) const {
        auto it = std::find(vertices.begin(), vertices.end(), p);
        if (it == vertices.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }
    bool has_edge(const PredicateSymbol& a, const PredicateSymbol& b) const {
        auto i = index(a), j = index(b);
        if (!i || !j) return false;
        return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.from == *i && e.to == *j; });
    }
    std::vector<std::vector<std::size_t>> successors() const {
        std::vector<std::vector<std::size_t>> out(vertices.size());
        for (const auto& e : edges) out[e.from].push_back(e.to);
        return out;
    }
};

inline DependencyGraph dependency_graph(const Program& p) {
    DependencyGraph g;
    g.vertices = predicate_symbols(p);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> edges;
    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const Rule& r = p.rules[ri];
        if (!r.has_head()) continue;
        std::size_t from = *g.index(signature(r.head));
        for (const auto& l : r.body) {
            if (l.kind != BodyLiteral::Kind::Positive) continue;
            auto& rules = edges[{from, *g.index(signature(l.atom))}];
            if (rules.empty() || rules.back() != ri) rules.push_back(ri);
        }
    }
    for (auto& [k, rules] : edges) g.edges.push_back({k.first, k.second, std::move(rules)});
    return g;
}

struct TightResult {
    bool                         tight = true;
    std::vector<PredicateSymbol> cycle; // witness when not tight; first vertex repeated implicitly
};

/// Decides tightness. The witness is the lexicographically least vertex
/// sequence (by name/arity) among the shortest cycles, starting at its least
/// vertex.
inline TightResult is_tight(const Program& p) {
    DependencyGraph g   = dependency_graph(p);
    auto            adj = g.successors();
    std::size_t     n   = g.vertices.size();
    // Vertex ids ordered by symbol for deterministic lexicographic search.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.vertices[a] < g.vertices[b]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
    for (auto& succ : adj) std::sort(succ.begin(), succ.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });

    // dist[u][v]: shortest path length from u to v (BFS from each vertex).
    const std::size_t                     inf = n + 1;
    std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, inf));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> queue{s};
        dist[s][s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::size_t u = queue[qi];
            for (auto v : adj[u]) {
                if (dist[s][v] == inf) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    std::size_t best = inf;
    for (std::size_t u = 0; u < n; ++u) {
        for (auto v : adj[u]) best = std::min(best, dist[v][u] + 1);
    }
    if (best >= inf) return {};

    // Among cycles of length `best`, take the lexicographically least rotation.
    std::optional<std::vector<std::size_t>> witness;
    for (std::size_t s : order) {
        // Greedy walk: at each step pick the least successor that can still close the cycle in time.
        std::vector<std::size_t> path{s};
        std::size_t              u = s;
        bool                     ok = true;
        for (std::size_t step = 1; step < best; ++step) {
            std::optional<std::size_t> next;
            for (auto v : adj[u]) {
                if (rank[v] > rank[s] && dist[v][s] == best - step) {
                    next = v;
                    break;
                }
            }
            if (!next) {
                ok = false;
                break;
            }
            path.push_back(*next);
            u = *next;
        }
        if (!ok || std::find(adj[u].begin(), adj[u].end(), s) == adj[u].end()) continue;
        witness = path;
        break;
    }
    TightResult out;
    out.tight = false;
    if (witness) {
        for (auto v : *witness) out.cycle.push_back(g.vertices[v]);
    }
    return out;
}

/// Graphviz rendering of the dependency graph.
inline std::string to_dot(const DependencyGraph& g) {
    std::string out = "digraph dependencies {\n";
    for (const auto& v : g.vertices) out += "  \"" + to_string(v) + "\";\n";
    for (const auto& e : g.edges) {
        out += "  \"" + to_string(g.vertices[e.from]) + "\" -> \"" + to_string(g.vertices[e.to]) + "\";\n";
    }
    return out + "}\n";
}

} // namespace ncomp
