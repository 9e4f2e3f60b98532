#pragma once

// The exceptional families of the fractional 2-extendability
// classification, their recognizers, and the exhaustive verification scans
// comparing engine verdicts against the classification's predictions.

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fracext/extendability.hpp"
#include "fracext/isomorphism.hpp"

namespace fracext {

// Family ids follow the classification lists: EvenI..EvenV are the
// even-order exceptional circulants, MainI..MainX the full list (cycles,
// Moebius ladders, prisms, {1,2}- and {1,3}-circulants, wreath graphs, the
// n=3m families and the Z_m x Z_3 Cayley family).
enum class FamilyId {
    F1eOddCycle,
    EvenI,
    EvenII,
    EvenIII,
    EvenIV,
    EvenV,
    MainI,
    MainII,
    MainIII,
    MainIV,
    MainV,
    MainVI,
    MainVII,
    MainVIII,
    MainIX,
    MainX,
};

inline const char* family_name(FamilyId id) {
    switch (id) {
        case FamilyId::F1eOddCycle: return "F1e_OddCycle";
        case FamilyId::EvenI: return "Even_i";
        case FamilyId::EvenII: return "Even_ii";
        case FamilyId::EvenIII: return "Even_iii";
        case FamilyId::EvenIV: return "Even_iv";
        case FamilyId::EvenV: return "Even_v";
        case FamilyId::MainI: return "Main_i";
        case FamilyId::MainII: return "Main_ii";
        case FamilyId::MainIII: return "Main_iii";
        case FamilyId::MainIV: return "Main_iv";
        case FamilyId::MainV: return "Main_v";
        case FamilyId::MainVI: return "Main_vi";
        case FamilyId::MainVII: return "Main_vii";
        case FamilyId::MainVIII: return "Main_viii";
        case FamilyId::MainIX: return "Main_ix";
        case FamilyId::MainX: return "Main_x";
    }
    return "?";
}

inline std::optional<FamilyId> family_from_name(const std::string& name) {
    for (FamilyId id :
         {FamilyId::F1eOddCycle, FamilyId::EvenI, FamilyId::EvenII, FamilyId::EvenIII,
          FamilyId::EvenIV, FamilyId::EvenV, FamilyId::MainI, FamilyId::MainII, FamilyId::MainIII,
          FamilyId::MainIV, FamilyId::MainV, FamilyId::MainVI, FamilyId::MainVII,
          FamilyId::MainVIII, FamilyId::MainIX, FamilyId::MainX})
        if (name == family_name(id)) return id;
    return std::nullopt;
}

struct FamilyInstance {
    FamilyId id;
    int param;  // the printed parameter: n for cycle-style families, m otherwise
};

namespace detail {

inline void require(bool ok, const std::string& range) {
    if (!ok) throw ValidationError("family parameter out of range; requires " + range);
}

// Cay(Z_m x Z_3; ...) realized on the canonical group: [3,m] when 3 | m,
// the cyclic group Z_3m (via CRT) otherwise.
inline Graph cay_zm_z3(int m, const std::vector<std::pair<int, int>>& reps) {
    if (m % 3 == 0) {
        AbelianGroup g({3, m});
        std::vector<int> idx;
        for (auto [a, b] : reps) idx.push_back(g.index_of_coords({b, a}));
        return cayley_graph(g, ConnectionSet::closed_from(g, idx));
    }
    AbelianGroup g = AbelianGroup::cyclic(3 * m);
    std::vector<int> idx;
    for (auto [a, b] : reps) {
        // x = a (mod m), x = b (mod 3)
        int x = 0;
        for (; x < 3 * m; ++x)
            if (x % m == ((a % m) + m) % m && x % 3 == ((b % 3) + 3) % 3) break;
        idx.push_back(x);
    }
    return cayley_graph(g, ConnectionSet::closed_from(g, idx));
}

}  // namespace detail

inline int family_order(FamilyId id, int p) {
    switch (id) {
        case FamilyId::F1eOddCycle: return p;
        case FamilyId::EvenI: return 2 * p;
        case FamilyId::EvenII: return 4 * p;
        case FamilyId::EvenIII: return 4 * p + 2;
        case FamilyId::EvenIV: return 4 * p + 2;
        case FamilyId::EvenV: return 2 * p;
        case FamilyId::MainI: return p;
        case FamilyId::MainII: return 4 * p;
        case FamilyId::MainIII: return 4 * p + 2;
        case FamilyId::MainIV: return p;
        case FamilyId::MainV: return p;
        case FamilyId::MainVI: return 4 * p + 2;
        case FamilyId::MainVII: return 3 * p;
        case FamilyId::MainVIII: return 3 * p;
        case FamilyId::MainIX: return 3 * p;
        case FamilyId::MainX: return 3 * p;
    }
    return 0;
}

/// Constructs the family member for the printed parameter, rejecting
/// parameters outside the printed range.
inline Graph construct_family(FamilyId id, int p) {
    Graph g;
    switch (id) {
        case FamilyId::F1eOddCycle:
            detail::require(p >= 3 && p % 2 == 1, "odd n >= 3");
            g = circulant(p, {1});
            break;
        case FamilyId::EvenI:
            detail::require(p >= 3, "m >= 3");
            g = circulant(2 * p, {1});
            break;
        case FamilyId::EvenII:
            detail::require(p >= 2, "m >= 2");
            g = circulant(4 * p, {1, 2 * p});
            break;
        case FamilyId::EvenIII:
            detail::require(p >= 1, "m >= 1");
            g = circulant(4 * p + 2, {2, 2 * p + 1});
            break;
        case FamilyId::EvenIV:
            detail::require(p >= 1, "m >= 1");
            g = circulant(4 * p + 2, {1, 2 * p});
            break;
        case FamilyId::EvenV:
            detail::require(p >= 3, "m >= 3");
            g = circulant(2 * p, {1, 2});
            break;
        case FamilyId::MainI:
            detail::require(p >= 5, "n >= 5");
            g = circulant(p, {1});
            break;
        case FamilyId::MainII:
            detail::require(p >= 2, "n = 4m >= 8");
            g = circulant(4 * p, {1, 2 * p});
            break;
        case FamilyId::MainIII:
            detail::require(p >= 1, "n = 4m+2 >= 6");
            g = circulant(4 * p + 2, {2, 2 * p + 1});
            break;
        case FamilyId::MainIV:
            detail::require(p >= 5, "n >= 5");
            g = circulant(p, {1, 2});
            break;
        case FamilyId::MainV:
            detail::require(p >= 5 && p % 2 == 1, "odd n >= 5");
            g = circulant(p, {1, 3});
            break;
        case FamilyId::MainVI:
            detail::require(p >= 1, "n = 4m+2 >= 6");
            g = circulant(4 * p + 2, {1, 2 * p});
            break;
        case FamilyId::MainVII:
            detail::require(p >= 3 && p % 2 == 1, "n = 3m >= 9 with m odd");
            g = circulant(3 * p, {1, p - 1});
            break;
        case FamilyId::MainVIII:
            detail::require(p >= 3 && p % 2 == 1, "n = 3m >= 9 with m odd");
            g = circulant(3 * p, {1, p + 1});
            break;
        case FamilyId::MainIX:
            detail::require(p >= 3 && p % 2 == 1, "n = 3m >= 9 with m odd");
            g = circulant(3 * p, {1, p - 1, p + 1});
            break;
        case FamilyId::MainX:
            detail::require(p >= 3 && p % 2 == 1, "n = 3m >= 9 with m odd");
            g = detail::cay_zm_z3(p, {{1, 0}, {1, 1}});
            break;
    }
    g.provenance.kind = GraphProvenance::Kind::Family;
    g.provenance.family_id = family_name(id);
    g.provenance.family_param = p;
    return g;
}

/// Instances of the ten-family classification list with the given order,
/// in ascending FamilyId order.
inline std::vector<FamilyInstance> f2e_families_of_order(int n) {
    std::vector<FamilyInstance> out;
    if (n >= 5) out.push_back({FamilyId::MainI, n});
    if (n >= 8 && n % 4 == 0) out.push_back({FamilyId::MainII, n / 4});
    if (n >= 6 && n % 4 == 2) out.push_back({FamilyId::MainIII, (n - 2) / 4});
    if (n >= 5) out.push_back({FamilyId::MainIV, n});
    if (n >= 5 && n % 2 == 1) out.push_back({FamilyId::MainV, n});
    if (n >= 6 && n % 4 == 2) out.push_back({FamilyId::MainVI, (n - 2) / 4});
    if (n >= 9 && n % 3 == 0 && (n / 3) % 2 == 1) {
        out.push_back({FamilyId::MainVII, n / 3});
        out.push_back({FamilyId::MainVIII, n / 3});
        out.push_back({FamilyId::MainIX, n / 3});
        out.push_back({FamilyId::MainX, n / 3});
    }
    return out;
}

namespace detail {

inline std::optional<std::vector<int>> circulant_residues(const Graph& g) {
    if (!g.provenance.cayley || !g.provenance.cayley->group.is_cyclic()) return std::nullopt;
    return g.provenance.cayley->set.indices();
}

// sorted multiset of |N(u) n N(v)| over edges: an iso invariant that
// separates most regular graphs without a search
inline std::vector<int> edge_codegree_profile(const Graph& g) {
    std::vector<int> out;
    for (auto [u, v] : g.edges()) {
        int common = 0;
        for (int w = 0; w < g.words(); ++w)
            common += std::popcount(g.row(u)[w] & g.row(v)[w]);
        out.push_back(common);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// isomorphism test with the circulant multiplier fast path and an
// invariant screen in front of the exact search
inline bool graphs_isomorphic(const Graph& a, const Graph& b, const IsoOptions& opts = {}) {
    if (a.vertex_count() != b.vertex_count()) return false;
    auto ra = circulant_residues(a), rb = circulant_residues(b);
    if (ra && rb && multiplier_isomorphic(a.vertex_count(), *ra, *rb)) return true;
    if (edge_codegree_profile(a) != edge_codegree_profile(b)) return false;
    return are_isomorphic(a, b, opts).has_value();
}

}  // namespace detail

/// Least-id family instance isomorphic to g, if any (the classification is
/// stated up to isomorphism, so membership is decided by the iso engine
/// with the multiplier fast path for circulants).
inline std::optional<FamilyInstance> recognize_f2e_family(const Graph& g,
                                                          const IsoOptions& iso = {}) {
    for (const FamilyInstance& fi : f2e_families_of_order(g.vertex_count())) {
        Graph h = construct_family(fi.id, fi.param);
        if (g.provenance.cayley &&
            g.provenance.cayley->set.size() != h.provenance.cayley->set.size())
            continue;
        if (detail::graphs_isomorphic(g, h, iso)) return fi;
    }
    return std::nullopt;
}

/// Predicted fractional 2-extendability of connected Cay(A;S), |A| >= 5:
/// true iff the graph is isomorphic to none of the ten families.
inline bool theorem_f2e_verdict(const AbelianGroup& a, const ConnectionSet& s,
                                const IsoOptions& iso = {}) {
    if (a.order() < 5) throw ValidationError("classification applies to order >= 5");
    Graph g = cayley_graph(a, s);
    if (!is_connected(g)) throw ValidationError("classification applies to connected graphs");
    return !recognize_f2e_family(g, iso).has_value();
}

/// Predicted fractional 1-extendability of a connected Cayley graph of
/// order >= 3: true iff the graph is not an odd cycle.
inline bool theorem_f1e_verdict(const AbelianGroup& a, const ConnectionSet& s) {
    if (a.order() < 3) throw ValidationError("classification applies to order >= 3");
    return !(a.order() % 2 == 1 && s.size() == 2);
}

// ---- verification scans ------------------------------------------------------

enum class ScanMode { F1e, F2e };
enum class ParityFilter { Any, Odd, Even };

struct ScanConfig {
    ScanMode mode = ScanMode::F2e;
    int order_lo = 5;
    int order_hi = 27;
    ParityFilter parity = ParityFilter::Any;
    int degree_cap = -1;  // cap on |S|, -1 = none
    bool dedup = true;
    int threads = 0;  // 0: hardware concurrency
    std::uint64_t seed = 0;
    // elementary Abelian 2-groups above this order have too many +- blocks
    // to enumerate, so the range is refused up front
    int max_order = 31;
};

struct ScanInstance {
    AbelianGroup group;
    ConnectionSet set;
};

struct ScanDiscrepancy {
    ScanInstance instance;
    bool engine_verdict = false;
    bool theorem_verdict = false;
    std::optional<FamilyInstance> matched_family;
    ExtendabilityReport engine_report;
};

struct ScanOrderRow {
    int order = 0;
    int group_count = 0;
    std::int64_t sets = 0;  // predicate-satisfying sets, orbit-weighted
    std::int64_t reps = 0;  // representatives actually checked
    int discrepancies = 0;
    bool dedup_unavailable = false;
};

struct ScanReport {
    ScanConfig config;
    std::vector<ScanOrderRow> rows;
    std::int64_t instances = 0;
    std::int64_t total_sets = 0;
    double dedup_factor = 1.0;
    std::vector<ScanDiscrepancy> discrepancies;
    double elapsed_ms = 0.0;
};

namespace detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <class Work>
inline void parallel_for(std::int64_t count, int threads, Work&& work) {
    threads = std::min<std::int64_t>(threads, count);
    if (threads <= 1) {
        for (std::int64_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::int64_t i = next.fetch_add(1);
                if (i >= count || failed.load()) break;
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Exhaustive check of the classification over all Abelian groups of the
/// configured orders and all generating connection sets (one per
/// automorphism orbit unless dedup is off).  Every discrepancy carries the
/// engine report with its re-validated counterexample.
inline ScanReport verify_theorem(const ScanConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    if (cfg.order_hi > cfg.max_order)
        throw BudgetError("scan range exceeds the configured order cap");
    ScanReport report;
    report.config = cfg;
    int t = cfg.mode == ScanMode::F1e ? 1 : 2;
    int min_order = cfg.mode == ScanMode::F1e ? 3 : 5;

    struct Item {
        int order_row;
        ScanInstance inst;
    };
    std::vector<Item> items;

    for (int n = std::max(cfg.order_lo, min_order); n <= cfg.order_hi; ++n) {
        if (cfg.parity == ParityFilter::Odd && n % 2 == 0) continue;
        if (cfg.parity == ParityFilter::Even && n % 2 == 1) continue;
        ScanOrderRow row;
        row.order = n;
        for (const AbelianGroup& a : enumerate_abelian_groups(n)) {
            ++row.group_count;
            auto predicate = [&](const ConnectionSet& s) {
                if (cfg.degree_cap >= 0 && s.size() > cfg.degree_cap) return false;
                return generates(a, s);
            };
            if (cfg.dedup) {
                OrbitRepsResult reps = connection_set_orbit_reps(a, predicate);
                row.dedup_unavailable |= reps.dedup_unavailable;
                row.sets += reps.matching_sets_total;
                row.reps += static_cast<std::int64_t>(reps.reps.size());
                for (auto& s : reps.reps)
                    items.push_back({static_cast<int>(report.rows.size()), {a, std::move(s)}});
            } else {
                OrbitRepsOptions no_dedup_opts;
                no_dedup_opts.aut_budget = 0;  // force the plain enumeration path
                OrbitRepsResult all = connection_set_orbit_reps(a, predicate, no_dedup_opts);
                row.sets += all.matching_sets_total;
                row.reps += static_cast<std::int64_t>(all.reps.size());
                for (auto& s : all.reps)
                    items.push_back({static_cast<int>(report.rows.size()), {a, std::move(s)}});
            }
        }
        report.rows.push_back(row);
    }

    std::vector<std::optional<ScanDiscrepancy>> found(items.size());
    detail::parallel_for(
        static_cast<std::int64_t>(items.size()), detail::resolve_threads(cfg.threads),
        [&](std::int64_t i) {
            const Item& item = items[i];
            Graph g = cayley_graph(item.inst.group, item.inst.set);
            ExtendabilityReport engine = is_fractional_t_extendable(g, t);
            bool predicted;
            std::optional<FamilyInstance> matched;
            if (cfg.mode == ScanMode::F1e) {
                predicted = theorem_f1e_verdict(item.inst.group, item.inst.set);
            } else {
                matched = recognize_f2e_family(g);
                predicted = !matched.has_value();
            }
            if (engine.verdict != predicted) {
                ScanDiscrepancy d;
                d.instance = item.inst;
                d.engine_verdict = engine.verdict;
                d.theorem_verdict = predicted;
                d.matched_family = matched;
                d.engine_report = std::move(engine);
                found[i] = std::move(d);
            }
        });

    for (std::size_t i = 0; i < items.size(); ++i)
        if (found[i]) {
            ++report.rows[items[i].order_row].discrepancies;
            report.discrepancies.push_back(std::move(*found[i]));
        }
    for (const auto& row : report.rows) {
        report.instances += row.reps;
        report.total_sets += row.sets;
    }
    report.dedup_factor =
        report.instances ? static_cast<double>(report.total_sets) / report.instances : 1.0;
    report.elapsed_ms = detail::ms_since(t0);
    return report;
}

// ---- family census -----------------------------------------------------------

struct CensusEntry {
    FamilyInstance instance;
    std::string graph;
    bool not_f2e = false;  // engine verdict on the constructed member
};

struct CensusOverlap {
    FamilyInstance a, b;
};

struct CensusRow {
    int order = 0;
    std::vector<CensusEntry> entries;
    std::vector<CensusOverlap> overlaps;  // isomorphic same-order pairs
};

/// Which families occur at each order, whether each member indeed fails
/// fractional 2-extendability, and which same-order members coincide up to
/// isomorphism.
inline std::vector<CensusRow> family_census(const std::vector<int>& orders,
                                            bool run_engine = true) {
    std::vector<CensusRow> out;
    for (int n : orders) {
        CensusRow row;
        row.order = n;
        std::vector<Graph> built;
        for (const FamilyInstance& fi : f2e_families_of_order(n)) {
            Graph g = construct_family(fi.id, fi.param);
            CensusEntry e;
            e.instance = fi;
            e.graph = g.provenance.describe();
            if (run_engine) e.not_f2e = !is_fractional_t_extendable(g, 2).verdict;
            row.entries.push_back(e);
            built.push_back(std::move(g));
        }
        for (std::size_t i = 0; i < built.size(); ++i)
            for (std::size_t j = i + 1; j < built.size(); ++j)
                if (detail::graphs_isomorphic(built[i], built[j]))
                    row.overlaps.push_back({row.entries[i].instance, row.entries[j].instance});
        out.push_back(std::move(row));
    }
    return out;
}

// ---- near-half implication scan ----------------------------------------------

struct ImplicationScanConfig {
    int order_lo = 5;
    int order_hi = 15;
    int t = 2;
    int threads = 0;
    std::uint64_t seed = 0;
    int max_order = 31;
};

struct ImplicationViolation {
    ScanInstance instance;
    ExtendabilityReport fractional_report;
    ExtendabilityReport near_report;
};

struct ImplicationScanReport {
    ImplicationScanConfig config;
    std::int64_t instances = 0;
    std::int64_t fractional_false = 0;  // instances where the near check was exercised
    std::vector<ImplicationViolation> violations;
    double elapsed_ms = 0.0;
};

/// Sweeps odd orders checking that no connected Cayley graph is near-half
/// t-extendable without being fractional t-extendable.  Instances that are
/// fractional t-extendable cannot violate the implication and are only
/// counted.
inline ImplicationScanReport implication_scan(const ImplicationScanConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    if (cfg.order_hi > cfg.max_order)
        throw BudgetError("scan range exceeds the configured order cap");
    ImplicationScanReport report;
    report.config = cfg;

    std::vector<ScanInstance> items;
    for (int n = std::max(cfg.order_lo, 2 * cfg.t + 1); n <= cfg.order_hi; ++n) {
        if (n % 2 == 0) continue;
        for (const AbelianGroup& a : enumerate_abelian_groups(n)) {
            auto predicate = [&](const ConnectionSet& s) { return generates(a, s); };
            OrbitRepsResult reps = connection_set_orbit_reps(a, predicate);
            for (auto& s : reps.reps) items.push_back({a, std::move(s)});
        }
    }
    report.instances = static_cast<std::int64_t>(items.size());

    std::vector<std::optional<ImplicationViolation>> found(items.size());
    std::atomic<std::int64_t> frac_false{0};
    detail::parallel_for(
        static_cast<std::int64_t>(items.size()), detail::resolve_threads(cfg.threads),
        [&](std::int64_t i) {
            Graph g = cayley_graph(items[i].group, items[i].set);
            ExtendabilityReport frac = is_fractional_t_extendable(g, cfg.t);
            if (frac.verdict) return;  // implication cannot be violated
            ++frac_false;
            ExtendabilityReport near = is_t_near_extendable(g, cfg.t);
            if (near.verdict) {
                ImplicationViolation v;
                v.instance = items[i];
                v.fractional_report = std::move(frac);
                v.near_report = std::move(near);
                found[i] = std::move(v);
            }
        });
    report.fractional_false = frac_false;
    for (auto& f : found)
        if (f) report.violations.push_back(std::move(*f));
    report.elapsed_ms = detail::ms_since(t0);
    return report;
}

}  // namespace fracext
