// Acceptance suite: one criterion per function, one pass/fail line each.
// Every check is exact (combinatorial verdicts); runtime ceilings are
// enforced in-process.  Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "fracext/classification.hpp"

using namespace fracext;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) g.add_edge(u, v);
    return g;
}

Graph random_graph(int n, double p, std::mt19937& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

Graph k4_bridge() {
    Graph g(8);
    for (int b = 0; b < 8; b += 4)
        for (int i = b; i < b + 4; ++i)
            for (int j = i + 1; j < b + 4; ++j) g.add_edge(i, j);
    g.add_edge(3, 4);
    return g;
}

// deterministic corpus shared by criteria 1 and 2
std::vector<Graph> random_corpus() {
    std::vector<Graph> out;
    std::mt19937 rng(20250810);
    std::uniform_int_distribution<int> np(7, 10);
    std::uniform_real_distribution<double> pp(0.1, 0.9);
    out.reserve(10000);
    for (int i = 0; i < 10000; ++i) out.push_back(random_graph(np(rng), pp(rng), rng));
    return out;
}

template <class F>
bool for_all_small_graphs(int max_n, F&& f) {
    for (int n = 0; n <= max_n; ++n) {
        int pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask)
            if (!f(graph_from_mask(n, mask))) return false;
    }
    return true;
}

// ---- criterion 1 -------------------------------------------------------------

bool criterion1(std::string& detail) {
    auto t0 = Clock::now();
    std::int64_t graphs = 0;
    auto check_one = [&](const Graph& g) {
        ++graphs;
        bool fast = has_fpm(g);
        bool truth = fpm_oracle(g);
        if (fast != truth) {
            detail = "verdict mismatch on a " + std::to_string(g.vertex_count()) + "-vertex graph";
            return false;
        }
        if (fast) {
            auto res = fpm_yes_witness(g, {});
            if (!fpm_extendable(res)) {
                detail = "yes-witness construction disagreed with the decision";
                return false;
            }
            const auto& w = std::get<FpmWitness>(res);
            std::string why;
            if (!validate_factor(g, w.factor, nullptr, &why) || !w.assignment.is_perfect_on(g)) {
                detail = "invalid YES certificate: " + why;
                return false;
            }
        } else {
            DeficiencyWitness w = fpm_no_witness(g);
            std::string why;
            if (!validate_witness(g, w, {}, &why)) {
                detail = "invalid NO certificate: " + why;
                return false;
            }
        }
        return true;
    };
    if (!for_all_small_graphs(6, check_one)) return false;
    for (const Graph& g : random_corpus())
        if (!check_one(g)) return false;
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << graphs << " graphs, " << secs << " s";
    detail = os.str();
    return secs <= 120.0;
}

// ---- criterion 2 -------------------------------------------------------------

bool criterion2(std::string& detail) {
    auto t0 = Clock::now();
    std::int64_t graphs = 0;
    auto check_one = [&](const Graph& g) {
        ++graphs;
        auto witness = has_perfect_matching(g);
        bool truth = pm_oracle(g);
        if (witness.has_value() != truth) {
            detail = "verdict mismatch on a " + std::to_string(g.vertex_count()) + "-vertex graph";
            return false;
        }
        if (witness && 2 * static_cast<int>(witness->edges.size()) != g.vertex_count()) {
            detail = "perfect matching witness does not cover every vertex";
            return false;
        }
        return true;
    };
    if (!for_all_small_graphs(6, check_one)) return false;
    for (const Graph& g : random_corpus())
        if (!check_one(g)) return false;
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << graphs << " graphs, " << secs << " s";
    detail = os.str();
    return secs <= 120.0;
}

// ---- criterion 3 -------------------------------------------------------------

bool criterion3(std::string& detail) {
    Graph kb = k4_bridge();
    bool frac = is_fractional_t_extendable(kb, 1).verdict;
    bool classical = is_t_extendable_classical(kb, 1).verdict;
    std::ostringstream os;
    os << "fractional=" << (frac ? "true" : "false")
       << ", classical=" << (classical ? "true" : "false");
    detail = os.str();
    return frac == true && classical == false;
}

// ---- criteria 4-6: scans -------------------------------------------------------

bool scan_criterion(ScanMode mode, int lo, int hi, ParityFilter parity, double limit_s,
                    std::string& detail) {
    auto t0 = Clock::now();
    ScanConfig cfg;
    cfg.mode = mode;
    cfg.order_lo = lo;
    cfg.order_hi = hi;
    cfg.parity = parity;
    ScanReport rep = verify_theorem(cfg);
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << rep.instances << " reps covering " << rep.total_sets << " sets, "
       << rep.discrepancies.size() << " discrepancies, " << secs << " s";
    detail = os.str();
    return rep.discrepancies.empty() && secs <= limit_s;
}

bool criterion4(std::string& detail) {
    return scan_criterion(ScanMode::F1e, 3, 20, ParityFilter::Any, 120.0, detail);
}

bool criterion5(std::string& detail) {
    return scan_criterion(ScanMode::F2e, 6, 20, ParityFilter::Even, 300.0, detail);
}

bool criterion6(std::string& detail) {
    auto t0 = Clock::now();
    std::ostringstream os;

    ScanConfig cfg;
    cfg.mode = ScanMode::F2e;
    cfg.order_lo = 5;
    cfg.order_hi = 27;
    cfg.parity = ParityFilter::Odd;
    ScanReport rep = verify_theorem(cfg);
    os << rep.instances << " reps / " << rep.total_sets << " sets";
    if (!rep.discrepancies.empty()) {
        detail = os.str() + ": discrepancies in the dedup scan";
        return false;
    }

    ScanConfig cross = cfg;
    cross.order_hi = 13;
    cross.dedup = false;
    ScanReport crossrep = verify_theorem(cross);
    if (!crossrep.discrepancies.empty()) {
        detail = os.str() + ": discrepancies in the no-dedup cross-run";
        return false;
    }
    // orbit accounting agrees with the full enumeration
    std::int64_t dedup_sets_13 = 0;
    for (const auto& row : rep.rows)
        if (row.order <= 13) dedup_sets_13 += row.sets;
    if (dedup_sets_13 != crossrep.instances) {
        detail = "orbit-weighted set count disagrees with the no-dedup enumeration";
        return false;
    }
    os << ", no-dedup cross-run " << crossrep.instances << " sets clean";

    // spot checks at n = 33 and 45
    std::mt19937 rng(424242);
    for (int n : {33, 45}) {
        int m = n / 3;
        for (FamilyId id :
             {FamilyId::MainVII, FamilyId::MainVIII, FamilyId::MainIX, FamilyId::MainX}) {
            Graph g = construct_family(id, m);
            if (is_fractional_t_extendable(g, 2).verdict) {
                detail = std::string("family member unexpectedly extendable: ") +
                         family_name(id) + " at n=" + std::to_string(n);
                return false;
            }
        }
        auto groups = enumerate_abelian_groups(n);
        int accepted = 0;
        std::uniform_int_distribution<std::size_t> gp(0, groups.size() - 1);
        std::bernoulli_distribution coin(0.5);
        while (accepted < 50) {
            const AbelianGroup& a = groups[gp(rng)];
            std::vector<int> idx;
            for (int x = 1; x < n; ++x) {
                int y = a.neg_index(x);
                if (x <= y && coin(rng)) {
                    idx.push_back(x);
                    if (y != x) idx.push_back(y);
                }
            }
            if (idx.size() < 4) continue;  // skip cycles and empty sets
            ConnectionSet s(a, idx);
            if (!generates(a, s)) continue;
            Graph g = cayley_graph(a, s);
            if (recognize_f2e_family(g).has_value()) continue;  // family members excluded
            ++accepted;
            if (!is_fractional_t_extendable(g, 2).verdict) {
                detail = "random non-family instance is not fractional 2-extendable at n=" +
                         std::to_string(n);
                return false;
            }
        }
    }
    double secs = seconds_since(t0);
    os << ", spot checks at 33/45 clean, " << secs << " s";
    detail = os.str();
    return secs <= 900.0;
}

// ---- criterion 7 -------------------------------------------------------------

bool criterion7(std::string& detail) {
    std::ostringstream os;
    for (int n : {3, 5, 7, 9}) {
        Graph lhs = [&] {
            if (n % 3 == 0) {
                AbelianGroup g({3, n});
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
        if (!f) {
            detail = "no isomorphism found for n=" + std::to_string(n);
            return false;
        }
        // re-validate the witness edge by edge, both directions
        for (int u = 0; u < lhs.vertex_count(); ++u)
            for (int v = u + 1; v < lhs.vertex_count(); ++v)
                if (lhs.has_edge(u, v) != rhs.has_edge((*f)[u], (*f)[v])) {
                    detail = "witness bijection fails at n=" + std::to_string(n);
                    return false;
                }
        os << "n=" << n << " ok; ";
    }
    detail = os.str();
    return true;
}

// ---- criterion 8 -------------------------------------------------------------

bool criterion8(std::string& detail) {
    auto t0 = Clock::now();
    std::ostringstream os;
    // no odd-order instance may be near-half extendable without being
    // fractional extendable, for t in {1,2}
    for (int t : {1, 2}) {
        ImplicationScanConfig cfg;
        cfg.order_lo = 5;
        cfg.order_hi = 21;
        cfg.t = t;
        ImplicationScanReport rep = implication_scan(cfg);
        if (!rep.violations.empty()) {
            detail = "implication violated at t=" + std::to_string(t);
            return false;
        }
        os << "t=" << t << ": " << rep.instances << " instances, " << rep.fractional_false
           << " near-checked; ";
    }
    // every connected non-cycle Cayley graph of an Abelian group of odd
    // order <= 21 is 1.5-extendable (full vertex loop, no shortcut)
    std::int64_t positives = 0;
    for (int n = 5; n <= 21; n += 2) {
        for (const AbelianGroup& a : enumerate_abelian_groups(n)) {
            auto reps = connection_set_orbit_reps(
                a, [&](const ConnectionSet& s) { return generates(a, s); });
            for (const auto& s : reps.reps) {
                if (s.size() == 2) continue;  // odd cycles are the stated exception
                Graph g = cayley_graph(a, s);
                NearExtendabilityOptions full;
                full.exploit_vertex_transitivity = false;
                if (!is_t_near_extendable(g, 1, full).verdict) {
                    detail = "non-cycle instance of order " + std::to_string(n) +
                             " is not 1.5-extendable";
                    return false;
                }
                ++positives;
            }
        }
    }
    double secs = seconds_since(t0);
    os << positives << " positive near-half checks, " << secs << " s";
    detail = os.str();
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    std::vector<Criterion> criteria = {
        {1, "oracle equivalence (fractional perfect matching)", criterion1},
        {2, "oracle equivalence (perfect matching)", criterion2},
        {3, "K4-bridge separation (fractional yes, classical no)", criterion3},
        {4, "fractional 1-extendability scan, orders 3..20", criterion4},
        {5, "fractional 2-extendability scan, even orders 6..20", criterion5},
        {6, "fractional 2-extendability scan, odd orders 5..27 + spot checks", criterion6},
        {7, "Z_n x Z_3 circulant isomorphism witnesses, n in {3,5,7,9}", criterion7},
        {8, "near-half implication sweep + odd-order 1.5-extendability", criterion8},
    };
    int failures = 0;
    for (auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
