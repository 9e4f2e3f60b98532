#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// Everything here is deliberately written the dumb way: these are the
// references the fast engine is checked against.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fracext/graph.hpp"
#include "fracext/matching.hpp"

namespace testutil {

using fracext::Graph;

inline Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle(int n) {
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

// two K4 blocks {0..3} and {4..7} joined by the bridge {3,4}
inline Graph k4_bridge() {
    Graph g(8);
    for (int b = 0; b < 8; b += 4)
        for (int i = b; i < b + 4; ++i)
            for (int j = i + 1; j < b + 4; ++j) g.add_edge(i, j);
    g.add_edge(3, 4);
    return g;
}

inline Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);       // outer cycle
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        g.add_edge(i, 5 + i);             // spokes
    }
    return g;
}

// graph from an edge-subset bitmask of the n*(n-1)/2 vertex pairs
inline Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) g.add_edge(u, v);
    return g;
}

inline Graph random_graph(int n, double p, std::mt19937& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    Graph h(g.vertex_count());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

// maximum matching size by recursion over edges (exponential; tiny n only)
inline int brute_force_max_matching(const Graph& g) {
    auto edges = g.edges();
    int n = g.vertex_count();
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> int {
        if (i == edges.size()) return 0;
        int best = self(self, i + 1);
        auto [u, v] = edges[i];
        if (!used[u] && !used[v]) {
            used[u] = used[v] = 1;
            best = std::max(best, 1 + self(self, i + 1));
            used[u] = used[v] = 0;
        }
        return best;
    };
    return rec(rec, 0);
}

// minimum vertex cover size of a bipartite graph by subset enumeration
inline int brute_force_min_vertex_cover(const fracext::BipartiteGraph& b) {
    int nl = b.left_count(), nr = b.right_count();
    int best = nl + nr;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (nl + nr)); ++mask) {
        int size = std::popcount(mask);
        if (size >= best) continue;
        bool covers = true;
        for (int u = 0; u < nl && covers; ++u) {
            if (mask >> u & 1) continue;
            for (int v = 0; v < nr && covers; ++v)
                if (b.has_edge(u, v) && !(mask >> (nl + v) & 1)) covers = false;
        }
        if (covers) best = size;
    }
    return best;
}

// triangle count, used as a cheap iso invariant cross-check
inline int triangle_count(const Graph& g) {
    int n = g.vertex_count();
    int count = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v)) continue;
            for (int w = v + 1; w < n; ++w)
                if (g.has_edge(u, w) && g.has_edge(v, w)) ++count;
        }
    return count;
}

// maximum total of a half-integral fractional matching (in halves) by
// enumerating all {0,1,2} edge weightings; tiny graphs only
inline int brute_force_nu_fractional_halves(const Graph& g) {
    auto edges = g.edges();
    int n = g.vertex_count();
    std::vector<int> sums(n, 0);
    int best = 0;
    auto rec = [&](auto&& self, std::size_t i, int total) -> void {
        if (i == edges.size()) {
            best = std::max(best, total);
            return;
        }
        auto [u, v] = edges[i];
        for (int w = 0; w <= 2; ++w) {
            if (sums[u] + w > 2 || sums[v] + w > 2) break;
            sums[u] += w;
            sums[v] += w;
            self(self, i + 1, total + w);
            sums[u] -= w;
            sums[v] -= w;
        }
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace testutil
