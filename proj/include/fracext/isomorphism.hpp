#pragma once

// Exact graph isomorphism by backtracking with degree/neighborhood pruning
// and forward-checked candidate masks.  Intended for the desk scale this
// project runs at (n <= 64); every positive answer carries a verified
// vertex bijection.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "fracext/graph.hpp"

namespace fracext {

struct IsoOptions {
    std::int64_t node_budget = 50'000'000;
    int max_vertices = 64;
};

namespace detail {

inline std::vector<std::vector<int>> neighbor_degree_profiles(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<std::vector<int>> prof(n);
    for (int v = 0; v < n; ++v) {
        g.for_each_neighbor(v, [&](int u) { prof[v].push_back(deg[u]); });
        std::sort(prof[v].begin(), prof[v].end());
    }
    return prof;
}

}  // namespace detail

/// Adjacency-preserving bijection g -> h, or nullopt when none exists.
/// Throws BudgetError ("iso budget exceeded") instead of guessing when the
/// search exceeds its node budget or the graphs exceed max_vertices.
inline std::optional<std::vector<int>> are_isomorphic(const Graph& g, const Graph& h,
                                                      const IsoOptions& opts = {}) {
    int n = g.vertex_count();
    if (n != h.vertex_count()) return std::nullopt;
    if (n > opts.max_vertices) throw BudgetError("iso budget exceeded (too many vertices)");
    if (n == 0) return std::vector<int>{};

    if (g.edge_count() != h.edge_count()) return std::nullopt;

    std::vector<int> deg_g(n), deg_h(n);
    for (int v = 0; v < n; ++v) deg_g[v] = g.degree(v), deg_h[v] = h.degree(v);
    {
        auto a = deg_g, b = deg_h;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    auto prof_g = detail::neighbor_degree_profiles(g);
    auto prof_h = detail::neighbor_degree_profiles(h);
    {
        auto a = prof_g, b = prof_h;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    // single-word masks (n <= 64)
    std::vector<std::uint64_t> adj_h(n, 0);
    for (int v = 0; v < n; ++v)
        h.for_each_neighbor(v, [&](int u) { adj_h[v] |= std::uint64_t(1) << u; });

    // initial candidates by degree + neighbor-degree profile
    std::vector<std::uint64_t> cand0(n, 0);
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x)
            if (deg_g[u] == deg_h[x] && prof_g[u] == prof_h[x]) cand0[u] |= std::uint64_t(1) << x;
    for (int u = 0; u < n; ++u)
        if (!cand0[u]) return std::nullopt;

    // order g's vertices most-constrained-first: repeatedly take the vertex
    // with the most already-ordered neighbors (ties by degree, then index)
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> placed(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1, best_links = -1;
        for (int u = 0; u < n; ++u) {
            if (placed[u]) continue;
            int links = 0;
            g.for_each_neighbor(u, [&](int w) { links += placed[w]; });
            if (best == -1 || links > best_links ||
                (links == best_links && deg_g[u] > deg_g[best])) {
                best = u;
                best_links = links;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }

    std::vector<std::vector<std::uint64_t>> cand_stack(n + 1, std::vector<std::uint64_t>(n));
    cand_stack[0] = cand0;
    std::vector<int> mapping(n, -1);
    std::vector<std::uint64_t> choice(n, 0);
    std::uint64_t used = 0;
    std::int64_t nodes = 0;

    int depth = 0;
    choice[0] = cand_stack[0][order[0]] ;
    while (depth >= 0) {
        if (depth == n) break;  // full mapping found
        int u = order[depth];
        std::uint64_t avail = choice[depth] & ~used;
        if (!avail) {
            // backtrack
            --depth;
            if (depth >= 0) {
                int pu = order[depth];
                used &= ~(std::uint64_t(1) << mapping[pu]);
                mapping[pu] = -1;
            }
            continue;
        }
        if (++nodes > opts.node_budget) throw BudgetError("iso budget exceeded");
        int x = std::countr_zero(avail);
        choice[depth] &= ~(std::uint64_t(1) << x);
        // forward-check: refine candidates of the not-yet-mapped vertices
        auto& cur = cand_stack[depth];
        auto& next = cand_stack[depth + 1];
        next = cur;
        bool feasible = true;
        for (int d2 = depth + 1; d2 < n && feasible; ++d2) {
            int w = order[d2];
            if (g.has_edge(u, w)) next[w] &= adj_h[x];
            else next[w] &= ~adj_h[x];
            next[w] &= ~(std::uint64_t(1) << x);
            if (!(next[w] & ~used & ~(std::uint64_t(1) << x))) feasible = false;
        }
        if (!feasible) continue;
        mapping[u] = x;
        used |= std::uint64_t(1) << x;
        ++depth;
        if (depth < n) choice[depth] = cand_stack[depth][order[depth]];
    }
    if (depth < 0) return std::nullopt;

    // verify the witness both ways before returning it
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v) != h.has_edge(mapping[u], mapping[v]))
                throw ContractViolation("isomorphism witness failed verification");
    return mapping;
}

// ---- circulant multiplier fast path ----------------------------------------

/// Sorted image k*S of a circulant connection set.
inline std::vector<int> multiplied_set(int n, const std::vector<int>& s, int k) {
    std::vector<int> out;
    out.reserve(s.size());
    for (int x : s) out.push_back(static_cast<int>((static_cast<long long>(x) * k) % n));
    std::sort(out.begin(), out.end());
    return out;
}

/// Least sorted residue set among {k*S : gcd(k,n)=1}; equality of canonical
/// forms proves Circ(n,S1) and Circ(n,S2) isomorphic via v -> kv.
inline std::vector<int> canonical_multiplier_set(int n, const std::vector<int>& s) {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> best = sorted;
    for (int k = 2; k < n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        auto img = multiplied_set(n, sorted, k);
        if (img < best) best = img;
    }
    return best;
}

/// Sufficient isomorphism test for circulants of equal order (multiplier
/// equivalence); false only means "not decided by a multiplier".
inline bool multiplier_isomorphic(int n, const std::vector<int>& s1, const std::vector<int>& s2) {
    if (s1.size() != s2.size()) return false;
    return canonical_multiplier_set(n, s1) == canonical_multiplier_set(n, s2);
}

}  // namespace fracext
