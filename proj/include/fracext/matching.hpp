#pragma once

// Matching engine: Hopcroft-Karp bipartite matching with Koenig covers,
// fractional perfect-matching decisions through the bipartite double cover
// (with certificates on both sides), blossom matching for perfect
// matchings, and the exhaustive desk-scale oracles.

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "fracext/graph.hpp"

namespace fracext {

// ---- certificate types -----------------------------------------------------

struct MatchingSpec {
    std::vector<std::pair<int, int>> edges;

    std::vector<int> vertices() const {
        std::vector<int> out;
        for (auto [u, v] : edges) {
            out.push_back(u);
            out.push_back(v);
        }
        return out;
    }
};

/// Throws unless the edges are pairwise disjoint edges of g.
inline void validate_matching(const Graph& g, const MatchingSpec& m) {
    std::vector<char> used(g.vertex_count(), 0);
    for (auto [u, v] : m.edges) {
        if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v))
            throw ValidationError("matching uses a non-edge");
        if (used[u] || used[v]) throw ValidationError("matching edges are not disjoint");
        used[u] = used[v] = 1;
    }
}

/// Edge weights in half-units: stored value = 2*f(e), each in {0,1,2}.
struct HalfIntegralAssignment {
    struct EdgeValue {
        int u, v, halves;
    };
    std::vector<EdgeValue> values;  // nonzero entries only, u < v

    /// Per-vertex incident sums (in halves).
    std::vector<int> vertex_sums(int n) const {
        std::vector<int> sum(n, 0);
        for (const auto& ev : values) {
            sum[ev.u] += ev.halves;
            sum[ev.v] += ev.halves;
        }
        return sum;
    }

    bool is_valid(const Graph& g) const {
        for (const auto& ev : values)
            if (ev.u < 0 || ev.v < 0 || ev.u >= g.vertex_count() || ev.v >= g.vertex_count() ||
                ev.u >= ev.v || !g.has_edge(ev.u, ev.v) || ev.halves < 1 || ev.halves > 2)
                return false;
        for (int s : vertex_sums(g.vertex_count()))
            if (s > 2) return false;
        return true;
    }

    /// A perfect assignment sums to exactly 2 halves at every vertex of the
    /// covered set (all vertices when cover is null).
    bool is_perfect_on(const Graph& g, const std::vector<int>* cover = nullptr) const {
        if (!is_valid(g)) return false;
        auto sums = vertex_sums(g.vertex_count());
        if (!cover) {
            for (int s : sums)
                if (s != 2) return false;
            return true;
        }
        std::vector<char> in(g.vertex_count(), 0);
        for (int v : *cover) in[v] = 1;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (sums[v] != (in[v] ? 2 : 0)) return false;
        return true;
    }
};

/// Spanning witness of a fractional perfect matching: disjoint edges plus
/// odd cycles covering every vertex.
struct EdgeOddCycleFactor {
    std::vector<std::pair<int, int>> matched_edges;
    std::vector<std::vector<int>> odd_cycles;

    HalfIntegralAssignment to_assignment() const {
        HalfIntegralAssignment a;
        for (auto [u, v] : matched_edges)
            a.values.push_back({std::min(u, v), std::max(u, v), 2});
        for (const auto& c : odd_cycles)
            for (std::size_t i = 0; i < c.size(); ++i) {
                int u = c[i], v = c[(i + 1) % c.size()];
                a.values.push_back({std::min(u, v), std::max(u, v), 1});
            }
        return a;
    }
};

/// Checks the factor invariants: components pairwise disjoint, every listed
/// edge/cycle lives in g, cycles odd of length >= 3, and the union covers
/// exactly `alive` (all vertices when null).
inline bool validate_factor(const Graph& g, const EdgeOddCycleFactor& f,
                            const std::vector<int>* alive = nullptr,
                            std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int n = g.vertex_count();
    std::vector<char> used(n, 0);
    auto take = [&](int v) {
        if (v < 0 || v >= n || used[v]) return false;
        used[v] = 1;
        return true;
    };
    for (auto [u, v] : f.matched_edges) {
        if (!take(u) || !take(v)) return fail("factor components are not disjoint");
        if (!g.has_edge(u, v)) return fail("factor uses a non-edge");
    }
    for (const auto& c : f.odd_cycles) {
        if (c.size() < 3 || c.size() % 2 == 0) return fail("factor cycle is not odd of length >= 3");
        for (int v : c)
            if (!take(v)) return fail("factor components are not disjoint");
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!g.has_edge(c[i], c[(i + 1) % c.size()])) return fail("factor cycle uses a non-edge");
    }
    if (alive) {
        std::vector<char> expectv(n, 0);
        for (int v : *alive) expectv[v] = 1;
        for (int v = 0; v < n; ++v)
            if (used[v] != expectv[v]) return fail("factor does not span the expected vertex set");
    } else {
        for (int v = 0; v < n; ++v)
            if (!used[v]) return fail("factor is not spanning");
    }
    return true;
}

/// Pair (I,U): I independent, every neighbor of I inside U, |I| > |U|.
/// Certifies that no fractional perfect matching exists.
struct DeficiencyWitness {
    std::vector<int> independent_set;  // I
    std::vector<int> blocker;          // U
};

/// Validates the witness against g with the given vertices removed.
inline bool validate_witness(const Graph& g, const DeficiencyWitness& w,
                             const std::vector<int>& removed, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int n = g.vertex_count();
    std::vector<char> gone(n, 0), in_i(n, 0), in_u(n, 0);
    for (int v : removed) gone[v] = 1;
    for (int v : w.independent_set) {
        if (v < 0 || v >= n || gone[v] || in_i[v]) return fail("I is not a vertex set of the host graph");
        in_i[v] = 1;
    }
    for (int v : w.blocker) {
        if (v < 0 || v >= n || gone[v] || in_u[v] || in_i[v]) return fail("U overlaps I or leaves the host graph");
        in_u[v] = 1;
    }
    for (int v : w.independent_set) {
        bool ok = true;
        g.for_each_neighbor(v, [&](int u) {
            if (gone[u]) return;
            if (in_i[u]) ok = false;        // I not independent
            else if (!in_u[u]) ok = false;  // neighbor escapes U
        });
        if (!ok) return fail("I is not independent or has a neighbor outside U");
    }
    if (w.independent_set.size() <= w.blocker.size()) return fail("|I| <= |U|");
    return true;
}

// ---- Hopcroft-Karp core -----------------------------------------------------

namespace detail {

struct HkScratch {
    std::vector<int> match_l, match_r, dist, queue;
};

inline HkScratch& hk_scratch() {
    thread_local HkScratch s;
    return s;
}

// Maximum matching over left rows masked by alive sets (null = all alive).
// Deterministic: vertices processed in ascending order.
template <class RowFn>
inline int hk_max_matching(int nl, int nr, int words, RowFn&& row, const std::uint64_t* alive_l,
                           const std::uint64_t* alive_r, HkScratch& s) {
    s.match_l.assign(nl, -1);
    s.match_r.assign(nr, -1);
    auto left_alive = [&](int u) { return !alive_l || test_bit(alive_l, u); };

    auto each_nbr = [&](int u, auto&& f) {
        const std::uint64_t* r = row(u);
        for (int w = 0; w < words; ++w) {
            std::uint64_t x = r[w];
            if (alive_r) x &= alive_r[w];
            while (x) {
                int v = w * 64 + std::countr_zero(x);
                x &= x - 1;
                if (f(v)) return true;
            }
        }
        return false;
    };

    int size = 0;
    for (int u = 0; u < nl; ++u)
        if (left_alive(u))
            each_nbr(u, [&](int v) {
                if (s.match_r[v] == -1) {
                    s.match_l[u] = v;
                    s.match_r[v] = u;
                    ++size;
                    return true;
                }
                return false;
            });

    s.dist.assign(nl, -1);
    s.queue.resize(nl);
    for (;;) {
        int qt = 0;
        bool reachable_free = false;
        for (int u = 0; u < nl; ++u) {
            s.dist[u] = -1;
            if (left_alive(u) && s.match_l[u] == -1) {
                s.dist[u] = 0;
                s.queue[qt++] = u;
            }
        }
        for (int qh = 0; qh < qt; ++qh) {
            int u = s.queue[qh];
            each_nbr(u, [&](int v) {
                int u2 = s.match_r[v];
                if (u2 == -1) reachable_free = true;
                else if (s.dist[u2] == -1) {
                    s.dist[u2] = s.dist[u] + 1;
                    s.queue[qt++] = u2;
                }
                return false;
            });
        }
        if (!reachable_free) break;

        auto try_augment = [&](auto&& self, int u) -> bool {
            bool ok = each_nbr(u, [&](int v) {
                int u2 = s.match_r[v];
                if (u2 == -1 || (s.dist[u2] == s.dist[u] + 1 && self(self, u2))) {
                    s.match_l[u] = v;
                    s.match_r[v] = u;
                    return true;
                }
                return false;
            });
            if (!ok) s.dist[u] = -1;
            return ok;
        };
        for (int u = 0; u < nl; ++u)
            if (left_alive(u) && s.match_l[u] == -1 && try_augment(try_augment, u)) ++size;
    }
    return size;
}

// Koenig construction: vertices reachable from free left vertices by
// alternating paths; cover = (L minus reachable) union (R intersect reachable).
template <class RowFn>
inline void hk_koenig(int nl, int nr, int words, RowFn&& row, const std::uint64_t* alive_l,
                      const std::uint64_t* alive_r, const std::vector<int>& match_l,
                      const std::vector<int>& match_r, std::vector<char>& cover_l,
                      std::vector<char>& cover_r) {
    auto left_alive = [&](int u) { return !alive_l || test_bit(alive_l, u); };
    std::vector<char> zl(nl, 0), zr(nr, 0);
    std::vector<int> stack;
    for (int u = 0; u < nl; ++u)
        if (left_alive(u) && match_l[u] == -1) {
            zl[u] = 1;
            stack.push_back(u);
        }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        const std::uint64_t* r = row(u);
        for (int w = 0; w < words; ++w) {
            std::uint64_t x = r[w];
            if (alive_r) x &= alive_r[w];
            while (x) {
                int v = w * 64 + std::countr_zero(x);
                x &= x - 1;
                if (v == match_l[u] || zr[v]) continue;  // alternate: non-matching L->R
                zr[v] = 1;
                int u2 = match_r[v];
                if (u2 != -1 && !zl[u2]) {
                    zl[u2] = 1;
                    stack.push_back(u2);
                }
            }
        }
    }
    cover_l.assign(nl, 0);
    cover_r.assign(nr, 0);
    for (int u = 0; u < nl; ++u)
        if (left_alive(u) && !zl[u]) cover_l[u] = 1;
    for (int v = 0; v < nr; ++v)
        if (zr[v]) cover_r[v] = 1;
}

// Fast decision: does the double cover of g restricted to ~removed have a
// perfect matching?  (Equivalently: does g - removed admit a fractional
// perfect matching.)
inline bool double_cover_has_pm(const Graph& g, const std::uint64_t* removed) {
    int n = g.vertex_count(), words = g.words();
    thread_local std::vector<std::uint64_t> alive;
    alive.assign(std::size_t(words ? words : 1), ~std::uint64_t(0));
    if (n % 64) alive[words - 1] = (~std::uint64_t(0)) >> (64 - n % 64);
    if (n == 0) return true;
    if (removed)
        for (int w = 0; w < words; ++w) alive[w] &= ~removed[w];
    int alive_count = popcount_words(alive.data(), words);
    // isolated alive vertex: certain failure
    for (int v = 0; v < n; ++v)
        if (test_bit(alive.data(), v)) {
            bool isolated = true;
            for (int w = 0; w < words && isolated; ++w)
                if (g.row(v)[w] & alive[w]) isolated = false;
            if (isolated) return false;
        }
    HkScratch& s = hk_scratch();
    int size = hk_max_matching(
        n, n, words, [&](int u) { return g.row(u); }, alive.data(), alive.data(), s);
    return size == alive_count;
}

}  // namespace detail

// ---- public bipartite operations -------------------------------------------

struct BipartiteMatching {
    std::vector<int> match_left;   // left -> right partner or -1
    std::vector<int> match_right;  // right -> left partner or -1
    int size = 0;
};

inline BipartiteMatching max_bipartite_matching(const BipartiteGraph& b) {
    detail::HkScratch s;
    int size = detail::hk_max_matching(
        b.left_count(), b.right_count(), b.words(), [&](int u) { return b.row(u); }, nullptr,
        nullptr, s);
    return BipartiteMatching{std::move(s.match_l), std::move(s.match_r), size};
}

struct VertexCover {
    std::vector<int> left, right;
    int size() const { return static_cast<int>(left.size() + right.size()); }
};

/// Minimum vertex cover from a maximum matching.  The returned cover has
/// size equal to the matching and covers every edge, which certifies both
/// optimality claims.
inline VertexCover koenig_cover(const BipartiteGraph& b, const BipartiteMatching& m) {
    std::vector<char> cl, cr;
    detail::hk_koenig(
        b.left_count(), b.right_count(), b.words(), [&](int u) { return b.row(u); }, nullptr,
        nullptr, m.match_left, m.match_right, cl, cr);
    VertexCover out;
    for (int u = 0; u < b.left_count(); ++u)
        if (cl[u]) out.left.push_back(u);
    for (int v = 0; v < b.right_count(); ++v)
        if (cr[v]) out.right.push_back(v);
    if (out.size() != m.size) throw ContractViolation("Koenig cover size mismatch");
    for (int u = 0; u < b.left_count(); ++u) {
        bool covered_u = cl[u];
        bool bad = false;
        detail::for_each_bit(b.row(u), b.words(), [&](int v) {
            if (!covered_u && !cr[v]) bad = true;
        });
        if (bad) throw ContractViolation("Koenig cover misses an edge");
    }
    return out;
}

// ---- fractional perfect matchings ------------------------------------------

/// g has a fractional perfect matching iff its bipartite double cover has a
/// perfect matching.
inline bool has_fpm(const Graph& g) { return detail::double_cover_has_pm(g, nullptr); }

namespace detail {

inline std::vector<std::uint64_t> removed_mask(const Graph& g, const std::vector<int>& removed) {
    std::vector<std::uint64_t> mask(std::size_t(g.words() ? g.words() : 1), 0);
    for (int v : removed) set_bit(mask.data(), v);
    return mask;
}

// Full matching data on the double cover of g - removed, plus the Koenig
// cover; used for certificate construction.
struct DoubleCoverRun {
    std::vector<int> match_l, match_r;
    std::vector<char> cover_l, cover_r;
    std::vector<char> alive;
    int alive_count = 0;
    int size = 0;
};

inline DoubleCoverRun double_cover_run(const Graph& g, const std::vector<int>& removed) {
    DoubleCoverRun run;
    int n = g.vertex_count(), words = g.words();
    std::vector<std::uint64_t> alive(std::size_t(words ? words : 1), ~std::uint64_t(0));
    if (n % 64) alive[words ? words - 1 : 0] = (~std::uint64_t(0)) >> (64 - n % 64);
    for (int v : removed) clear_bit(alive.data(), v);
    run.alive.assign(n, 0);
    for (int v = 0; v < n; ++v)
        if (test_bit(alive.data(), v)) {
            run.alive[v] = 1;
            ++run.alive_count;
        }
    HkScratch s;
    run.size = hk_max_matching(
        n, n, words, [&](int u) { return g.row(u); }, alive.data(), alive.data(), s);
    hk_koenig(
        n, n, words, [&](int u) { return g.row(u); }, alive.data(), alive.data(), s.match_l,
        s.match_r, run.cover_l, run.cover_r);
    run.match_l = std::move(s.match_l);
    run.match_r = std::move(s.match_r);
    return run;
}

// Perfect matchings of the double cover define a fixed-point-free successor
// bijection p with p(v) in N(v); its orbits yield the factor.  Length-2
// orbits become matched edges, even orbits are split into alternate edges
// starting at their smallest vertex, odd orbits become odd cycles.
inline EdgeOddCycleFactor factor_from_successors(const DoubleCoverRun& run) {
    EdgeOddCycleFactor f;
    int n = static_cast<int>(run.alive.size());
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
        if (!run.alive[v] || seen[v]) continue;
        std::vector<int> orbit;
        int cur = v;
        do {
            seen[cur] = 1;
            orbit.push_back(cur);
            cur = run.match_l[cur];
        } while (cur != v);
        if (orbit.size() == 2) {
            f.matched_edges.emplace_back(orbit[0], orbit[1]);
        } else if (orbit.size() % 2 == 0) {
            for (std::size_t i = 0; i < orbit.size(); i += 2)
                f.matched_edges.emplace_back(orbit[i], orbit[i + 1]);
        } else {
            f.odd_cycles.push_back(std::move(orbit));
        }
    }
    return f;
}

inline DeficiencyWitness witness_from_cover(const DoubleCoverRun& run) {
    DeficiencyWitness w;
    int n = static_cast<int>(run.alive.size());
    for (int v = 0; v < n; ++v) {
        if (!run.alive[v]) continue;
        int c = (run.cover_l[v] ? 1 : 0) + (run.cover_r[v] ? 1 : 0);
        if (c == 0) w.independent_set.push_back(v);
        else if (c == 2) w.blocker.push_back(v);
    }
    return w;
}

}  // namespace detail

struct FpmWitness {
    EdgeOddCycleFactor factor;
    HalfIntegralAssignment assignment;
};

struct FpmObstruction {
    std::vector<int> removed;  // endpoints of the forced edges
    DeficiencyWitness witness; // valid for g - removed
};

using FpmExtendResult = std::variant<FpmWitness, FpmObstruction>;

inline bool fpm_extendable(const FpmExtendResult& r) {
    return std::holds_alternative<FpmWitness>(r);
}

/// Fractional perfect matching of g forcing f(e)=1 on the given disjoint
/// edges.  On success returns a spanning edge/odd-cycle factor containing
/// every forced edge together with the induced half-integral assignment;
/// on failure returns a deficiency witness for g minus the forced endpoints.
inline FpmExtendResult fpm_yes_witness(const Graph& g, const MatchingSpec& forced) {
    validate_matching(g, forced);
    std::vector<int> removed = forced.vertices();
    detail::DoubleCoverRun run = detail::double_cover_run(g, removed);
    if (run.size == run.alive_count) {
        FpmWitness w;
        w.factor = detail::factor_from_successors(run);
        for (auto [u, v] : forced.edges) w.factor.matched_edges.emplace_back(u, v);
        w.assignment = w.factor.to_assignment();
        std::string why;
        if (!validate_factor(g, w.factor, nullptr, &why))
            throw ContractViolation("factor extraction produced an invalid factor: " + why);
        if (!w.assignment.is_perfect_on(g))
            throw ContractViolation("assignment derived from factor is not perfect");
        return w;
    }
    FpmObstruction obs;
    obs.removed = removed;
    obs.witness = detail::witness_from_cover(run);
    std::string why;
    if (!validate_witness(g, obs.witness, removed, &why))
        throw ContractViolation("deficiency witness construction failed: " + why);
    return obs;
}

/// Deficiency witness for a graph without a fractional perfect matching.
inline DeficiencyWitness fpm_no_witness(const Graph& g) {
    detail::DoubleCoverRun run = detail::double_cover_run(g, {});
    if (run.size == run.alive_count)
        throw ContractViolation("fpm_no_witness called on a graph with a fractional perfect matching");
    DeficiencyWitness w = detail::witness_from_cover(run);
    std::string why;
    if (!validate_witness(g, w, {}, &why))
        throw ContractViolation("deficiency witness construction failed: " + why);
    return w;
}

/// Ground-truth fractional perfect matching decision: for every vertex
/// subset U, the number of isolated vertices of g - U must be at most |U|.
/// Exhaustive over 2^n subsets; n is capped at 20.
inline bool fpm_oracle(const Graph& g) {
    int n = g.vertex_count();
    if (n > 20) throw BudgetError("fpm_oracle is limited to n <= 20");
    if (n == 0) return true;
    std::vector<std::uint32_t> adj(n, 0);
    for (int v = 0; v < n; ++v)
        g.for_each_neighbor(v, [&](int u) { adj[v] |= std::uint32_t(1) << u; });
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t u_set = 0; u_set <= full; ++u_set) {
        int iso = 0;
        std::uint32_t rest = full & ~u_set;
        std::uint32_t scan = rest;
        while (scan) {
            int v = std::countr_zero(scan);
            scan &= scan - 1;
            if ((adj[v] & rest) == 0) ++iso;
        }
        if (iso > std::popcount(u_set)) return false;
    }
    return true;
}

// ---- perfect matchings (general graphs) -------------------------------------

namespace detail {

// Blossom-contraction maximum matching, O(n^3); removed vertices (null =
// none) are ignored.  mate[] uses original vertex ids.
inline int general_max_matching(const Graph& g, const std::uint64_t* removed,
                                std::vector<int>& mate) {
    int n = g.vertex_count();
    mate.assign(n, -1);
    auto alive = [&](int v) { return !removed || !test_bit(removed, v); };

    std::vector<int> p(n), base(n), q;
    std::vector<char> used(n), blossom(n), used2(n);

    auto lca = [&](int a, int b) {
        std::fill(used2.begin(), used2.end(), 0);
        int v = a;
        for (;;) {
            v = base[v];
            used2[v] = 1;
            if (mate[v] == -1) break;
            v = p[mate[v]];
        }
        int u = b;
        for (;;) {
            u = base[u];
            if (used2[u]) return u;
            u = p[mate[u]];
        }
    };

    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[mate[v]]] = 1;
            p[v] = child;
            child = mate[v];
            v = p[mate[v]];
        }
    };

    auto find_path = [&](int root) -> int {
        std::fill(used.begin(), used.end(), 0);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        q.assign(1, root);
        for (std::size_t qi = 0; qi < q.size(); ++qi) {
            int v = q[qi];
            int res = -1;
            g.for_each_neighbor(v, [&](int to) {
                if (res != -1 || !alive(to)) return;
                if (base[v] == base[to] || mate[v] == to) return;
                if (to == root || (mate[to] != -1 && p[mate[to]] != -1)) {
                    int curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n; ++i)
                        if (alive(i) && blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push_back(i);
                            }
                        }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (mate[to] == -1) {
                        res = to;
                    } else if (!used[mate[to]]) {
                        used[mate[to]] = 1;
                        q.push_back(mate[to]);
                    }
                }
            });
            if (res != -1) return res;
        }
        return -1;
    };

    int size = 0;
    // cheap greedy seed
    for (int v = 0; v < n; ++v) {
        if (!alive(v) || mate[v] != -1) continue;
        int pick = -1;
        g.for_each_neighbor(v, [&](int u) {
            if (pick == -1 && alive(u) && mate[u] == -1) pick = u;
        });
        if (pick != -1) {
            mate[v] = pick;
            mate[pick] = v;
            ++size;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!alive(v) || mate[v] != -1) continue;
        int u = find_path(v);
        if (u == -1) continue;
        ++size;
        while (u != -1) {
            int pv = p[u], ppv = mate[pv];
            mate[u] = pv;
            mate[pv] = u;
            u = ppv;
        }
    }
    return size;
}

}  // namespace detail

/// Perfect matching witness, or nothing when none exists.
inline std::optional<MatchingSpec> has_perfect_matching(const Graph& g) {
    int n = g.vertex_count();
    if (n % 2) return std::nullopt;
    std::vector<int> mate;
    int size = detail::general_max_matching(g, nullptr, mate);
    if (2 * size != n) return std::nullopt;
    MatchingSpec m;
    for (int v = 0; v < n; ++v)
        if (v < mate[v]) m.edges.emplace_back(v, mate[v]);
    validate_matching(g, m);
    return m;
}

/// Ground-truth perfect matching decision by branching on the lowest
/// uncovered vertex; n is capped at 20.
inline bool pm_oracle(const Graph& g) {
    int n = g.vertex_count();
    if (n > 20) throw BudgetError("pm_oracle is limited to n <= 20");
    if (n % 2) return false;
    if (n == 0) return true;
    std::vector<std::uint32_t> adj(n, 0);
    for (int v = 0; v < n; ++v)
        g.for_each_neighbor(v, [&](int u) { adj[v] |= std::uint32_t(1) << u; });
    const std::uint32_t full = (1u << n) - 1;
    auto rec = [&](auto&& self, std::uint32_t free) -> bool {
        if (!free) return true;
        int v = std::countr_zero(free);
        std::uint32_t cand = adj[v] & free;
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            if (self(self, free & ~(std::uint32_t(1) << v) & ~(std::uint32_t(1) << w))) return true;
        }
        return false;
    };
    return rec(rec, full);
}

/// Fractional matching number in half-units: 2 * nu_f(g), computed as the
/// maximum matching size of the bipartite double cover.
inline int nu_fractional(const Graph& g) {
    detail::DoubleCoverRun run = detail::double_cover_run(g, {});
    return run.size;
}

}  // namespace fracext
