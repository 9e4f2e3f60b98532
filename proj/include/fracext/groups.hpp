#pragma once

// Finite Abelian groups in invariant-factor form, their elements and
// inverse-closed connection sets, plus the enumeration/automorphism
// machinery the Cayley-graph scans are built on.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace fracext {

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct GroupElement {
    std::vector<int> coords;

    friend bool operator==(const GroupElement& a, const GroupElement& b) = default;
    friend auto operator<=>(const GroupElement& a, const GroupElement& b) = default;
};

/// Finite Abelian group Z_{d1} x ... x Z_{dk} with d1 | d2 | ... | dk and
/// each d_i >= 2.  The empty factor list is the trivial group.  Elements
/// are addressed either as coordinate tuples or as indices 0..order-1 in
/// lexicographic tuple order (index 0 is the identity).
class AbelianGroup {
public:
    AbelianGroup() : factors_{}, order_(1) {}

    explicit AbelianGroup(std::vector<int> invariant_factors)
        : factors_(std::move(invariant_factors)), order_(1) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw ValidationError("invariant factor < 2");
            if (i > 0 && factors_[i] % factors_[i - 1] != 0)
                throw ValidationError("invariant factors must form a divisibility chain");
            order_ *= factors_[i];
        }
    }

    static AbelianGroup cyclic(int n) {
        if (n < 1) throw ValidationError("cyclic group order must be >= 1");
        if (n == 1) return AbelianGroup{};
        return AbelianGroup{{n}};
    }

    /// Builds the group from an arbitrary direct-product factor list,
    /// normalizing to invariant-factor form (e.g. [3,5] -> [15]).
    static AbelianGroup from_factors(const std::vector<int>& factors);

    const std::vector<int>& invariant_factors() const { return factors_; }
    int order() const { return order_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    bool is_trivial() const { return order_ == 1; }
    bool is_cyclic() const { return factors_.size() <= 1; }

    std::string name() const {
        if (factors_.empty()) return "Z1";
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += 'x';
            s += 'Z';
            s += std::to_string(factors_[i]);
        }
        return s;
    }

    GroupElement element(int index) const {
        GroupElement e;
        e.coords.resize(factors_.size());
        for (int i = rank() - 1; i >= 0; --i) {
            e.coords[i] = index % factors_[i];
            index /= factors_[i];
        }
        return e;
    }

    int index_of(const GroupElement& e) const {
        check_element(e);
        int idx = 0;
        for (int i = 0; i < rank(); ++i) idx = idx * factors_[i] + e.coords[i];
        return idx;
    }

    /// Element index from a coordinate tuple; entries are reduced mod d_i
    /// (so negative residues are accepted).
    int index_of_coords(const std::vector<int>& coords) const {
        if (static_cast<int>(coords.size()) != rank())
            throw ValidationError("coordinate length does not match group rank");
        int idx = 0;
        for (int i = 0; i < rank(); ++i) {
            int c = coords[i] % factors_[i];
            if (c < 0) c += factors_[i];
            idx = idx * factors_[i] + c;
        }
        return idx;
    }

    int add_index(int a, int b) const {
        if (rank() <= 1) return order_ <= 1 ? 0 : (a + b) % order_;
        int res = 0, mul = 1;
        // componentwise addition, least significant coordinate first
        for (int i = rank() - 1; i >= 0; --i) {
            int d = factors_[i];
            int ca = a % d, cb = b % d;
            a /= d;
            b /= d;
            res += ((ca + cb) % d) * mul;
            mul *= d;
        }
        return res;
    }

    int neg_index(int a) const {
        if (rank() <= 1) return order_ <= 1 ? 0 : (order_ - a) % order_;
        int res = 0, mul = 1;
        for (int i = rank() - 1; i >= 0; --i) {
            int d = factors_[i];
            int c = a % d;
            a /= d;
            res += ((d - c) % d) * mul;
            mul *= d;
        }
        return res;
    }

    int order_of_index(int a) const {
        long long ord = 1;
        for (int i = rank() - 1; i >= 0; --i) {
            int d = factors_[i];
            int c = a % d;
            a /= d;
            long long o = d / std::gcd(d, c == 0 ? d : c);
            ord = std::lcm(ord, o);
        }
        return static_cast<int>(ord);
    }

    void check_element(const GroupElement& e) const {
        if (static_cast<int>(e.coords.size()) != rank())
            throw ValidationError("coordinate length does not match group rank");
        for (int i = 0; i < rank(); ++i)
            if (e.coords[i] < 0 || e.coords[i] >= factors_[i])
                throw ValidationError("coordinate out of range");
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<int> factors_;
    int order_;
};

inline GroupElement elt_add(const AbelianGroup& g, const GroupElement& x, const GroupElement& y) {
    g.check_element(x);
    g.check_element(y);
    GroupElement r;
    r.coords.resize(g.rank());
    for (int i = 0; i < g.rank(); ++i)
        r.coords[i] = (x.coords[i] + y.coords[i]) % g.invariant_factors()[i];
    return r;
}

inline GroupElement elt_neg(const AbelianGroup& g, const GroupElement& x) {
    g.check_element(x);
    GroupElement r;
    r.coords.resize(g.rank());
    for (int i = 0; i < g.rank(); ++i) {
        int d = g.invariant_factors()[i];
        r.coords[i] = (d - x.coords[i]) % d;
    }
    return r;
}

inline int elt_order(const AbelianGroup& g, const GroupElement& x) {
    g.check_element(x);
    return g.order_of_index(g.index_of(x));
}

namespace detail {

inline std::vector<std::pair<int, int>> prime_factorization(int n) {
    std::vector<std::pair<int, int>> out;
    for (int p = 2; static_cast<long long>(p) * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// all partitions of e, parts in non-increasing order, deterministic order
inline std::vector<std::vector<int>> integer_partitions(int e) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxPart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, maxPart); part >= 1; --part) {
            cur.push_back(part);
            self(self, rest - part, part);
            cur.pop_back();
        }
    };
    rec(rec, e, e);
    return out;
}

}  // namespace detail

inline AbelianGroup AbelianGroup::from_factors(const std::vector<int>& factors) {
    // collect prime-power components, then stack largest-with-largest
    std::vector<std::pair<int, std::vector<int>>> by_prime;  // prime -> exponents desc
    for (int f : factors) {
        if (f < 1) throw ValidationError("group factor must be >= 1");
        for (auto [p, e] : detail::prime_factorization(f)) {
            auto it = std::find_if(by_prime.begin(), by_prime.end(),
                                   [p = p](const auto& x) { return x.first == p; });
            if (it == by_prime.end()) by_prime.push_back({p, {e}});
            else it->second.push_back(e);
        }
    }
    std::size_t k = 0;
    for (auto& [p, exps] : by_prime) {
        std::sort(exps.rbegin(), exps.rend());
        k = std::max(k, exps.size());
    }
    std::vector<int> inv(k, 1);
    for (auto& [p, exps] : by_prime)
        for (std::size_t j = 0; j < exps.size(); ++j)
            for (int t = 0; t < exps[j]; ++t) inv[j] *= p;
    std::reverse(inv.begin(), inv.end());  // ascending, d_i | d_{i+1}
    return inv.empty() ? AbelianGroup{} : AbelianGroup{inv};
}

/// One group per isomorphism class of Abelian groups of order n, in
/// canonical invariant-factor form; ordered by factor-list length, then
/// lexicographically.  n = 1 yields the trivial group.
inline std::vector<AbelianGroup> enumerate_abelian_groups(int n) {
    if (n < 1) throw ValidationError("group order must be >= 1");
    if (n == 1) return {AbelianGroup{}};
    auto primes = detail::prime_factorization(n);
    std::vector<std::vector<std::vector<int>>> parts;
    for (auto [p, e] : primes) parts.push_back(detail::integer_partitions(e));

    std::vector<std::vector<int>> factor_lists;
    std::vector<std::size_t> choice(primes.size(), 0);
    while (true) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            k = std::max(k, parts[i][choice[i]].size());
        std::vector<int> inv(k, 1);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const auto& lambda = parts[i][choice[i]];
            for (std::size_t j = 0; j < lambda.size(); ++j)
                for (int t = 0; t < lambda[j]; ++t) inv[j] *= primes[i].first;
        }
        std::reverse(inv.begin(), inv.end());
        factor_lists.push_back(std::move(inv));

        std::size_t i = 0;
        for (; i < primes.size(); ++i) {
            if (++choice[i] < parts[i].size()) break;
            choice[i] = 0;
        }
        if (i == primes.size()) break;
    }
    std::sort(factor_lists.begin(), factor_lists.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<AbelianGroup> out;
    out.reserve(factor_lists.size());
    for (auto& f : factor_lists) out.emplace_back(std::move(f));
    return out;
}

/// Inverse-closed, identity-free subset of a group, stored as sorted
/// element indices together with its group.
class ConnectionSet {
public:
    ConnectionSet() = default;  // empty set of the trivial group

    ConnectionSet(AbelianGroup group, std::vector<int> element_indices)
        : group_(std::move(group)), indices_(std::move(element_indices)) {
        std::sort(indices_.begin(), indices_.end());
        indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
        for (int idx : indices_) {
            if (idx < 0 || idx >= group_.order())
                throw ValidationError("connection set element out of range");
            if (idx == 0)
                throw ValidationError("connection set contains the identity");
            if (!std::binary_search(indices_.begin(), indices_.end(), group_.neg_index(idx)))
                throw ValidationError("connection set is not inverse-closed");
        }
    }

    /// Builds the set from representatives, closing under negation.
    static ConnectionSet closed_from(const AbelianGroup& g, const std::vector<int>& reps) {
        std::vector<int> idx;
        for (int r : reps) {
            if (r == 0) throw ValidationError("connection set contains the identity");
            idx.push_back(r);
            idx.push_back(g.neg_index(r));
        }
        return ConnectionSet(g, std::move(idx));
    }

    const AbelianGroup& group() const { return group_; }
    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }
    bool contains(int idx) const {
        return std::binary_search(indices_.begin(), indices_.end(), idx);
    }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(indices_.size());
        for (int i : indices_) out.push_back(group_.element(i));
        return out;
    }

    friend bool operator==(const ConnectionSet& a, const ConnectionSet& b) {
        return a.group_ == b.group_ && a.indices_ == b.indices_;
    }

private:
    AbelianGroup group_;
    std::vector<int> indices_;
};

/// true iff <S> = A (closure of S under addition, starting from 0).
inline bool generates(const AbelianGroup& g, const ConnectionSet& s) {
    if (&g != &s.group() && !(g == s.group()))
        throw ValidationError("connection set belongs to a different group");
    std::vector<char> seen(g.order(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int si : s.indices()) {
            int w = g.add_index(v, si);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == g.order();
}

struct AutomorphismSet {
    std::vector<std::vector<int>> perms;  // each maps element index -> image index
    bool complete = true;                 // false iff enumeration budget was hit
};

/// All automorphisms of A, found by enumerating images of the
/// invariant-factor generators and keeping the bijective homomorphisms.
/// If the candidate space exceeds max_candidates the search is abandoned
/// and complete=false is returned (callers must not dedup with a partial
/// automorphism list).
inline AutomorphismSet abelian_automorphisms(const AbelianGroup& g,
                                             std::int64_t max_candidates = (1 << 22)) {
    AutomorphismSet out;
    int n = g.order();
    if (n == 1) {
        out.perms.push_back({0});
        return out;
    }
    int k = g.rank();
    // candidate images of generator i: elements killed by d_i
    std::vector<std::vector<int>> candidates(k);
    std::int64_t space = 1;
    for (int i = 0; i < k; ++i) {
        int d = g.invariant_factors()[i];
        // image of e_i must be killed by d_i
        for (int x = 0; x < n; ++x)
            if (d % g.order_of_index(x) == 0) candidates[i].push_back(x);
        space *= static_cast<std::int64_t>(candidates[i].size());
        if (space > max_candidates) {
            out.complete = false;
            return out;
        }
    }

    std::vector<int> img(k, 0);
    std::vector<int> perm(n), seen(n);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
            // phi(sum c_i e_i) = sum c_i img_i, built elementwise
            std::fill(seen.begin(), seen.end(), 0);
            bool bij = true;
            for (int x = 0; x < n && bij; ++x) {
                auto coords = g.element(x).coords;
                int y = 0;
                for (int j = 0; j < k; ++j)
                    for (int t = 0; t < coords[j]; ++t) y = g.add_index(y, img[j]);
                perm[x] = y;
                if (seen[y]) bij = false;
                seen[y] = 1;
            }
            if (bij) out.perms.push_back(perm);
            return;
        }
        for (int c : candidates[i]) {
            img[i] = c;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

namespace detail {

// Greedy generating subset of a permutation group given by its full element
// list; orbits under the subset equal orbits under the whole group, which
// keeps the orbit flood cheap when |Aut| is large.
inline std::vector<std::vector<int>> small_generating_set(
    const std::vector<std::vector<int>>& perms, int n) {
    auto key = [](const std::vector<int>& p) {
        return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(int));
    };
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::unordered_set<std::string> known{key(id)};
    std::vector<std::vector<int>> gens, elements{id};
    std::vector<int> prod(n);
    for (const auto& a : perms) {
        if (known.count(key(a))) continue;
        gens.push_back(a);
        // re-close under right multiplication by the generators
        std::vector<std::vector<int>> frontier = elements;
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& f : frontier)
                for (const auto& g : gens) {
                    for (int i = 0; i < n; ++i) prod[i] = g[f[i]];
                    if (known.insert(key(prod)).second) {
                        elements.push_back(prod);
                        next.push_back(prod);
                    }
                }
            frontier = std::move(next);
        }
        if (elements.size() == perms.size()) break;
    }
    return gens.empty() ? std::vector<std::vector<int>>{id} : gens;
}

}  // namespace detail

struct OrbitRepsOptions {
    std::int64_t aut_budget = (1 << 22);
    int max_pair_blocks = 24;  // enumeration is 2^blocks; above this, refuse
};

struct OrbitRepsResult {
    std::vector<ConnectionSet> reps;
    std::vector<std::int64_t> orbit_sizes;  // parallel to reps (1s when dedup unavailable)
    std::int64_t matching_sets_total = 0;   // predicate-satisfying sets across all orbits
    bool dedup_unavailable = false;
};

/// One representative per Aut(A)-orbit of inverse-closed, identity-free,
/// predicate-satisfying subsets.  The predicate must be invariant under
/// automorphisms (connectivity, size caps and the like are).  When the
/// automorphism enumeration budget is exceeded, dedup is skipped and all
/// predicate-satisfying sets are returned with dedup_unavailable set.
inline OrbitRepsResult connection_set_orbit_reps(
    const AbelianGroup& g, const std::function<bool(const ConnectionSet&)>& predicate,
    const OrbitRepsOptions& opts = {}) {
    OrbitRepsResult out;
    int n = g.order();
    if (n <= 1) return out;

    // {x,-x} blocks, ordered by smaller member
    std::vector<std::pair<int, int>> blocks;
    for (int x = 1; x < n; ++x) {
        int y = g.neg_index(x);
        if (x <= y) blocks.emplace_back(x, y);
    }
    int p = static_cast<int>(blocks.size());
    if (p > opts.max_pair_blocks)
        throw BudgetError("connection-set enumeration budget exceeded (order too large)");

    std::vector<int> block_of(n, -1);
    for (int b = 0; b < p; ++b) block_of[blocks[b].first] = block_of[blocks[b].second] = b;

    auto set_from_mask = [&](std::uint32_t m) {
        std::vector<int> idx;
        for (int b = 0; b < p; ++b)
            if (m >> b & 1) {
                idx.push_back(blocks[b].first);
                if (blocks[b].second != blocks[b].first) idx.push_back(blocks[b].second);
            }
        return ConnectionSet(g, std::move(idx));
    };

    const std::uint32_t total = 1u << p;
    AutomorphismSet auts = abelian_automorphisms(g, opts.aut_budget);
    if (!auts.complete) {
        out.dedup_unavailable = true;
        for (std::uint32_t m = 1; m < total; ++m) {
            ConnectionSet s = set_from_mask(m);
            if (predicate(s)) {
                out.reps.push_back(std::move(s));
                out.orbit_sizes.push_back(1);
                ++out.matching_sets_total;
            }
        }
        return out;
    }

    // block permutations induced by a generating subset; orbits are the same
    std::vector<std::vector<int>> gens = detail::small_generating_set(auts.perms, n);
    std::vector<std::vector<int>> bperm;
    bperm.reserve(gens.size());
    for (const auto& perm : gens) {
        std::vector<int> bp(p);
        for (int b = 0; b < p; ++b) bp[b] = block_of[perm[blocks[b].first]];
        bperm.push_back(std::move(bp));
    }

    std::vector<char> visited(total, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t m = 1; m < total; ++m) {
        if (visited[m]) continue;
        // m is the least member of its orbit; flood the rest
        std::int64_t orbit_size = 0;
        visited[m] = 1;
        stack.assign(1, m);
        while (!stack.empty()) {
            std::uint32_t cur = stack.back();
            stack.pop_back();
            ++orbit_size;
            for (const auto& bp : bperm) {
                std::uint32_t img = 0;
                std::uint32_t rest = cur;
                while (rest) {
                    int b = std::countr_zero(rest);
                    rest &= rest - 1;
                    img |= 1u << bp[b];
                }
                if (!visited[img]) {
                    visited[img] = 1;
                    stack.push_back(img);
                }
            }
        }
        ConnectionSet s = set_from_mask(m);
        if (predicate(s)) {
            out.reps.push_back(std::move(s));
            out.orbit_sizes.push_back(orbit_size);
            out.matching_sets_total += orbit_size;
        }
    }
    return out;
}

// ---- text syntax ----------------------------------------------------------
// group "Z9" / "Z3xZ3"; element "(1,2)" or "4"; set "{1,-1,3,-3}" or
// "{(1,0),(1,1)}".  Set parsing closes under negation and rejects 0.

inline AbelianGroup parse_group(const std::string& text) {
    std::vector<int> factors;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != 'Z' && text[i] != 'z')
            throw ValidationError("bad group syntax near '" + text.substr(i) + "'");
        ++i;
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw ValidationError("bad group syntax: missing factor in '" + text + "'");
        factors.push_back(std::stoi(text.substr(i, j - i)));
        i = j;
        if (i < text.size()) {
            if (text[i] != 'x' && text[i] != 'X')
                throw ValidationError("bad group syntax near '" + text.substr(i) + "'");
            ++i;
        }
    }
    if (factors.empty()) throw ValidationError("empty group spec");
    return AbelianGroup::from_factors(factors);
}

inline GroupElement parse_element(const AbelianGroup& g, const std::string& text) {
    std::vector<int> coords;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    bool parens = i < text.size() && text[i] == '(';
    if (parens) ++i;
    while (true) {
        skip_ws();
        std::size_t j = i;
        if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
        std::size_t k = j;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == j) throw ValidationError("bad element syntax '" + text + "'");
        coords.push_back(std::stoi(text.substr(i, k - i)));
        i = k;
        skip_ws();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    if (parens) {
        if (i >= text.size() || text[i] != ')')
            throw ValidationError("bad element syntax '" + text + "'");
        ++i;
    }
    if (static_cast<int>(coords.size()) != g.rank())
        throw ValidationError("element arity does not match group " + g.name());
    return g.element(g.index_of_coords(coords));
}

inline ConnectionSet parse_connection_set(const AbelianGroup& g, const std::string& text) {
    std::string body = text;
    auto strip = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    };
    body = strip(body);
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}') throw ValidationError("unbalanced braces in connection set");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> reps;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',')) ++i;
        if (i >= body.size()) break;
        std::size_t j = i;
        if (body[j] == '(') {
            int depth = 0;
            do {
                if (body[j] == '(') ++depth;
                if (body[j] == ')') --depth;
                ++j;
            } while (j < body.size() && depth > 0);
            if (depth != 0) throw ValidationError("unbalanced parentheses in connection set");
        } else {
            while (j < body.size() && body[j] != ',') ++j;
        }
        GroupElement e = parse_element(g, strip(body.substr(i, j - i)));
        int idx = g.index_of(e);
        if (idx == 0) throw ValidationError("connection set contains the identity");
        reps.push_back(idx);
        i = j;
    }
    if (reps.empty()) throw ValidationError("empty connection set");
    return ConnectionSet::closed_from(g, reps);
}

inline std::string element_to_string(const AbelianGroup& g, const GroupElement& e) {
    if (g.rank() <= 1) return std::to_string(e.coords.empty() ? 0 : e.coords[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e.coords[i]);
    }
    s += ')';
    return s;
}

inline std::string connection_set_to_string(const ConnectionSet& s) {
    std::string out = "{";
    bool first = true;
    for (int idx : s.indices()) {
        if (!first) out += ',';
        first = false;
        out += element_to_string(s.group(), s.group().element(idx));
    }
    out += '}';
    return out;
}

}  // namespace fracext
