#include <doctest.h>

#include <numeric>
#include <random>

#include "fracext/isomorphism.hpp"
#include "test_util.hpp"

using namespace fracext;
using namespace testutil;

namespace {

bool mapping_is_isomorphism(const Graph& g, const Graph& h, const std::vector<int>& f) {
    int n = g.vertex_count();
    std::vector<char> hit(n, 0);
    for (int v : f) {
        if (v < 0 || v >= n || hit[v]) return false;
        hit[v] = 1;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v) != h.has_edge(f[u], f[v])) return false;
    return true;
}

}  // namespace

TEST_CASE("isomorphic after random relabeling") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> np(1, 12);
        std::uniform_real_distribution<double> pp(0.1, 0.9);
        Graph g = random_graph(np(rng), pp(rng), rng);
        std::vector<int> perm(g.vertex_count());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h = relabel(g, perm);
        auto f = are_isomorphic(g, h);
        REQUIRE(f.has_value());
        CHECK(mapping_is_isomorphism(g, h, *f));
    }
    Graph c5 = cycle(5);
    CHECK(are_isomorphic(c5, relabel(c5, {2, 0, 3, 1, 4})).has_value());
}

TEST_CASE("non-isomorphic circulants of equal degree") {
    Graph a = circulant(9, {1, 2});
    Graph b = circulant(9, {1, 3});
    // equal degrees, different triangle structure backs up the refusal
    CHECK(triangle_count(a) != triangle_count(b));
    CHECK_FALSE(are_isomorphic(a, b).has_value());
}

TEST_CASE("edge flips break isomorphism") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> np(4, 10);
        Graph g = random_graph(np(rng), 0.5, rng);
        Graph h = g;
        int n = g.vertex_count();
        std::uniform_int_distribution<int> vp(0, n - 1);
        int u = vp(rng), v = vp(rng);
        if (u == v || h.has_edge(u, v)) continue;
        h.add_edge(u, v);
        CHECK_FALSE(are_isomorphic(g, h).has_value());  // edge counts differ
    }
}

TEST_CASE("the Z_n x Z_3 Cayley graph is the stated circulant") {
    // Cay(Z_n x Z_3; {(1,0),(1,1),(1,-1)} closed) = Circ(3n; {1, n-1, n+1})
    for (int n : {3, 5, 7, 9}) {
        Graph lhs = [&] {
            if (n % 3 == 0) {
                AbelianGroup g({3, n});
                // (a,b) of Z_n x Z_3 sits at (b,a) of Z_3 x Z_n
                auto idx = [&](int x, int y) { return g.index_of_coords({y, x}); };
                return cayley_graph(
                    g, ConnectionSet::closed_from(g, {idx(1, 0), idx(1, 1), idx(1, 2)}));
            }
            AbelianGroup g = AbelianGroup::cyclic(3 * n);
            auto crt = [&](int x, int y) {
                for (int t = 0; t < 3 * n; ++t)
                    if (t % n == ((x % n) + n) % n && t % 3 == ((y % 3) + 3) % 3) return t;
                return -1;
            };
            return cayley_graph(g,
                                ConnectionSet::closed_from(g, {crt(1, 0), crt(1, 1), crt(1, -1)}));
        }();
        Graph rhs = circulant(3 * n, {1, n - 1, n + 1});
        auto f = are_isomorphic(lhs, rhs);
        REQUIRE_MESSAGE(f.has_value(), "n = " << n);
        CHECK(mapping_is_isomorphism(lhs, rhs, *f));
    }
}

TEST_CASE("multiplier fast path agrees with the iso engine (n <= 20)") {
    std::mt19937 rng(37);
    for (int n = 5; n <= 20; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            std::uniform_int_distribution<int> rp(1, n - 1);
            std::vector<int> reps{rp(rng), rp(rng)};
            Graph a = circulant(n, reps);
            int k = rp(rng);
            if (std::gcd(k, n) != 1) continue;
            // v -> kv maps Circ(n,S) onto Circ(n,kS)
            std::vector<int> mapped;
            bool ok = true;
            for (int r : reps) {
                int m = (r * k) % n;
                if (m == 0) ok = false;
                mapped.push_back(m);
            }
            if (!ok) continue;
            Graph b = circulant(n, mapped);
            auto sa = a.provenance.cayley->set.indices();
            auto sb = b.provenance.cayley->set.indices();
            CHECK(multiplier_isomorphic(n, sa, sb));
            CHECK(are_isomorphic(a, b).has_value());
        }
    }
    // multiplier equality never contradicts the engine
    for (int n = 5; n <= 12; ++n)
        for (int r1 = 1; r1 <= n / 2; ++r1)
            for (int r2 = r1 + 1; r2 <= n / 2; ++r2) {
                Graph a = circulant(n, {r1});
                Graph b = circulant(n, {r2});
                auto sa = a.provenance.cayley->set.indices();
                auto sb = b.provenance.cayley->set.indices();
                if (multiplier_isomorphic(n, sa, sb))
                    CHECK(are_isomorphic(a, b).has_value());
            }
}

TEST_CASE("budget cap is an explicit error") {
    Graph big(65);
    CHECK_THROWS_AS(are_isomorphic(big, big), BudgetError);
}
