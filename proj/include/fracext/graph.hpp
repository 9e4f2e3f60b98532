#pragma once

// Simple undirected graphs over bitset adjacency rows, Cayley/circulant
// constructors with provenance, induced subgraphs, and the bipartite
// double cover used by the fractional matching engine.

#include <bit>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracext/groups.hpp"

namespace fracext {

namespace detail {

inline int word_count(int n) { return (n + 63) / 64; }

template <class F>
inline void for_each_bit(const std::uint64_t* row, int words, F&& f) {
    for (int w = 0; w < words; ++w) {
        std::uint64_t x = row[w];
        while (x) {
            f(w * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
}

inline bool test_bit(const std::uint64_t* row, int v) {
    return row[v >> 6] >> (v & 63) & 1;
}

inline void set_bit(std::uint64_t* row, int v) { row[v >> 6] |= std::uint64_t(1) << (v & 63); }
inline void clear_bit(std::uint64_t* row, int v) { row[v >> 6] &= ~(std::uint64_t(1) << (v & 63)); }

inline int popcount_words(const std::uint64_t* row, int words) {
    int c = 0;
    for (int w = 0; w < words; ++w) c += std::popcount(row[w]);
    return c;
}

}  // namespace detail

struct CayleySpec {
    AbelianGroup group;
    ConnectionSet set;
};

struct GraphProvenance {
    enum class Kind { AdHoc, Cayley, Circulant, Family };
    Kind kind = Kind::AdHoc;
    std::optional<CayleySpec> cayley;  // present for Cayley/Circulant/Family
    std::string family_id;             // present for Family
    int family_param = 0;

    bool has_cayley_symmetry() const { return cayley.has_value(); }

    std::string describe() const {
        switch (kind) {
            case Kind::AdHoc:
                return "adhoc";
            case Kind::Circulant:
                return "Circ(" + std::to_string(cayley->group.order()) + ";" +
                       connection_set_to_string(cayley->set) + ")";
            case Kind::Cayley:
                return "Cay(" + cayley->group.name() + ";" +
                       connection_set_to_string(cayley->set) + ")";
            case Kind::Family:
                return family_id + "(" + std::to_string(family_param) + ")=" +
                       (cayley ? (cayley->group.is_cyclic() ? "Circ(" + std::to_string(cayley->group.order()) + ";" + connection_set_to_string(cayley->set) + ")"
                                                            : "Cay(" + cayley->group.name() + ";" + connection_set_to_string(cayley->set) + ")")
                               : std::string("?"));
        }
        return "?";
    }
};

class Graph {
public:
    Graph() : n_(0), words_(0) {}

    explicit Graph(int n) : n_(n), words_(detail::word_count(n)), adj_(std::size_t(n) * words_, 0) {
        if (n < 0) throw ValidationError("negative vertex count");
    }

    int vertex_count() const { return n_; }
    int words() const { return words_; }

    const std::uint64_t* row(int v) const { return adj_.data() + std::size_t(v) * words_; }
    std::uint64_t* row(int v) { return adj_.data() + std::size_t(v) * words_; }

    void add_edge(int u, int v) {
        if (u == v) throw ValidationError("self-loop");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ValidationError("edge endpoint out of range");
        detail::set_bit(row(u), v);
        detail::set_bit(row(v), u);
    }

    bool has_edge(int u, int v) const { return detail::test_bit(row(u), v); }

    int degree(int v) const { return detail::popcount_words(row(v), words_); }

    int edge_count() const {
        int total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return total / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            detail::for_each_bit(row(u), words_, [&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    template <class F>
    void for_each_neighbor(int v, F&& f) const {
        detail::for_each_bit(row(v), words_, std::forward<F>(f));
    }

    GraphProvenance provenance;

private:
    int n_, words_;
    std::vector<std::uint64_t> adj_;
};

/// Left-indexed bitset adjacency over the right side.
class BipartiteGraph {
public:
    BipartiteGraph() : n_left_(0), n_right_(0), words_(0) {}

    BipartiteGraph(int n_left, int n_right)
        : n_left_(n_left), n_right_(n_right), words_(detail::word_count(n_right)),
          adj_(std::size_t(n_left) * words_, 0) {}

    int left_count() const { return n_left_; }
    int right_count() const { return n_right_; }
    int words() const { return words_; }

    const std::uint64_t* row(int u) const { return adj_.data() + std::size_t(u) * words_; }
    std::uint64_t* row(int u) { return adj_.data() + std::size_t(u) * words_; }

    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n_left_ || v >= n_right_)
            throw ValidationError("bipartite edge endpoint out of range");
        detail::set_bit(row(u), v);
    }

    bool has_edge(int u, int v) const { return detail::test_bit(row(u), v); }

    int left_degree(int u) const { return detail::popcount_words(row(u), words_); }

    int edge_count() const {
        int total = 0;
        for (int u = 0; u < n_left_; ++u) total += left_degree(u);
        return total;
    }

private:
    int n_left_, n_right_, words_;
    std::vector<std::uint64_t> adj_;
};

/// Cay(A;S): vertex i ~ vertex j iff element(j) - element(i) lies in S.
/// Vertex indices follow the lexicographic tuple order, so vertex 0 is the
/// identity.
inline Graph cayley_graph(const AbelianGroup& a, const ConnectionSet& s) {
    if (!(a == s.group())) throw ValidationError("connection set belongs to a different group");
    if (s.empty()) throw ValidationError("connection set is empty");
    Graph g(a.order());
    for (int v = 0; v < a.order(); ++v)
        for (int si : s.indices()) g.add_edge(v, a.add_index(v, si));
    g.provenance.kind = a.is_cyclic() ? GraphProvenance::Kind::Circulant : GraphProvenance::Kind::Cayley;
    g.provenance.cayley = CayleySpec{a, s};
    return g;
}

/// Circ(n;S) with S given as residue representatives (closed under
/// negation automatically).
inline Graph circulant(int n, const std::vector<int>& residues) {
    AbelianGroup zn = AbelianGroup::cyclic(n);
    std::vector<int> reps;
    for (int r : residues) {
        int c = r % n;
        if (c < 0) c += n;
        if (c == 0) throw ValidationError("connection set contains the identity");
        reps.push_back(c);
    }
    return cayley_graph(zn, ConnectionSet::closed_from(zn, reps));
}

inline bool is_connected(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        g.for_each_neighbor(v, [&](int w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        });
    }
    return reached == n;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> original_id;  // new vertex -> vertex of the source graph
};

/// Induced subgraph on V \ W, with a map back to the original ids.
inline InducedSubgraph delete_vertices(const Graph& g, const std::vector<int>& w) {
    int n = g.vertex_count();
    std::vector<char> removed(n, 0);
    for (int v : w) {
        if (v < 0 || v >= n) throw ValidationError("deleted vertex out of range");
        removed[v] = 1;
    }
    InducedSubgraph out;
    std::vector<int> new_id(n, -1);
    for (int v = 0; v < n; ++v)
        if (!removed[v]) {
            new_id[v] = static_cast<int>(out.original_id.size());
            out.original_id.push_back(v);
        }
    out.graph = Graph(static_cast<int>(out.original_id.size()));
    for (int v = 0; v < n; ++v) {
        if (removed[v]) continue;
        g.for_each_neighbor(v, [&](int u) {
            if (!removed[u] && v < u) out.graph.add_edge(new_id[v], new_id[u]);
        });
    }
    return out;
}

/// Two copies v+, v- of every vertex; each edge uv becomes u+v- and v+u-.
inline BipartiteGraph bipartite_double_cover(const Graph& g) {
    int n = g.vertex_count();
    BipartiteGraph b(n, n);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < g.words(); ++w) b.row(v)[w] = g.row(v)[w];
    return b;
}

// ---- text formats ----------------------------------------------------------

/// "n m" then one "u v" line per edge.
inline Graph parse_edge_list(std::istream& in) {
    int n, m;
    if (!(in >> n >> m)) throw ValidationError("bad edge list header");
    if (n < 0 || m < 0) throw ValidationError("bad edge list header");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw ValidationError("bad edge list entry");
        g.add_edge(u, v);
    }
    return g;
}

inline std::string format_edge_list(const Graph& g) {
    auto es = g.edges();
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(es.size()) + "\n";
    for (auto [u, v] : es) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline std::string vertex_label(const Graph& g, int v) {
    if (g.provenance.cayley)
        return element_to_string(g.provenance.cayley->group, g.provenance.cayley->group.element(v));
    return std::to_string(v);
}

inline std::string to_dot(const Graph& g) {
    std::string out = "graph G {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out += "  " + std::to_string(v) + " [label=\"" + vertex_label(g, v) + "\"];\n";
    for (auto [u, v] : g.edges())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace fracext
