#pragma once

// JSON serialization for graphs, certificates and reports.  Kept separate
// so that only the CLI and the tests that need it pay for the json header.

#include <json.hpp>

#include "fracext/classification.hpp"

namespace fracext {

using nlohmann::json;

// ---- graphs -----------------------------------------------------------------

inline json json_of(const GraphProvenance& p) {
    json j;
    switch (p.kind) {
        case GraphProvenance::Kind::AdHoc:
            j["kind"] = "adhoc";
            break;
        case GraphProvenance::Kind::Cayley:
            j["kind"] = "cayley";
            break;
        case GraphProvenance::Kind::Circulant:
            j["kind"] = "circulant";
            break;
        case GraphProvenance::Kind::Family:
            j["kind"] = "family";
            j["family"] = p.family_id;
            j["param"] = p.family_param;
            break;
    }
    if (p.cayley) {
        j["group"] = p.cayley->group.name();
        json set = json::array();
        for (int idx : p.cayley->set.indices())
            set.push_back(element_to_string(p.cayley->group, p.cayley->group.element(idx)));
        j["set"] = set;
    }
    return j;
}

inline json json_of(const Graph& g) {
    json j;
    j["n"] = g.vertex_count();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    j["edges"] = edges;
    j["provenance"] = json_of(g.provenance);
    return j;
}

/// Graph from {"n":..., "edges":[[u,v],...]}; provenance is not restored.
inline Graph graph_from_json(const json& j) {
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

// ---- certificates -------------------------------------------------------------

inline json json_of(const MatchingSpec& m) {
    json edges = json::array();
    for (auto [u, v] : m.edges) edges.push_back(json::array({u, v}));
    return json{{"edges", edges}};
}

inline MatchingSpec matching_from_json(const json& j) {
    MatchingSpec m;
    for (const auto& e : j.at("edges")) m.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return m;
}

inline json json_of(const EdgeOddCycleFactor& f) {
    json edges = json::array();
    for (auto [u, v] : f.matched_edges) edges.push_back(json::array({u, v}));
    json cycles = json::array();
    for (const auto& c : f.odd_cycles) cycles.push_back(c);
    return json{{"edges", edges}, {"odd_cycles", cycles}};
}

inline EdgeOddCycleFactor factor_from_json(const json& j) {
    EdgeOddCycleFactor f;
    for (const auto& e : j.at("edges"))
        f.matched_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& c : j.at("odd_cycles")) f.odd_cycles.push_back(c.get<std::vector<int>>());
    return f;
}

inline json json_of(const DeficiencyWitness& w) {
    return json{{"I", w.independent_set}, {"U", w.blocker}};
}

inline DeficiencyWitness witness_from_json(const json& j) {
    DeficiencyWitness w;
    w.independent_set = j.at("I").get<std::vector<int>>();
    w.blocker = j.at("U").get<std::vector<int>>();
    return w;
}

inline json json_of(const HalfIntegralAssignment& a) {
    json edges = json::array();
    for (const auto& ev : a.values) edges.push_back(json::array({ev.u, ev.v, ev.halves}));
    return json{{"edges", edges}};
}

inline HalfIntegralAssignment assignment_from_json(const json& j) {
    HalfIntegralAssignment a;
    for (const auto& e : j.at("edges"))
        a.values.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    return a;
}

// ---- reports -------------------------------------------------------------------

inline json json_of(const ExtendabilityCounterexample& c) {
    json j;
    j["matching"] = json_of(c.matching);
    if (c.witness) j["witness"] = json_of(*c.witness);
    if (c.pm_missing) j["pm_missing"] = true;
    if (c.failing_vertex >= 0) j["failing_vertex"] = c.failing_vertex;
    return j;
}

inline json json_of(const ExtendabilityReport& r) {
    json j;
    j["graph"] = r.graph;
    j["t"] = r.t;
    j["mode"] = mode_name(r.mode);
    j["verdict"] = r.verdict;
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (r.counterexample) j["counterexample"] = json_of(*r.counterexample);
    j["stats"] = {{"matchings_enumerated", r.stats.matchings_enumerated},
                  {"symmetry_reduction", r.stats.symmetry_reduction}};
    return j;
}

inline json json_of(const FamilyInstance& fi) {
    return json{{"family", family_name(fi.id)}, {"param", fi.param}};
}

inline json json_of(const ScanInstance& inst) {
    json set = json::array();
    for (int idx : inst.set.indices())
        set.push_back(element_to_string(inst.group, inst.group.element(idx)));
    return json{{"group", inst.group.name()}, {"set", set}};
}

inline json json_of(const ScanDiscrepancy& d) {
    json j;
    j["instance"] = json_of(d.instance);
    j["engine_verdict"] = d.engine_verdict;
    j["theorem_verdict"] = d.theorem_verdict;
    if (d.matched_family) j["matched_family"] = json_of(*d.matched_family);
    j["engine_report"] = json_of(d.engine_report);
    return j;
}

inline json json_of(const ScanReport& r) {
    json j;
    j["mode"] = r.config.mode == ScanMode::F1e ? "f1e" : "f2e";
    j["orders"] = json::array({r.config.order_lo, r.config.order_hi});
    j["parity"] = r.config.parity == ParityFilter::Any
                      ? "any"
                      : (r.config.parity == ParityFilter::Odd ? "odd" : "even");
    if (r.config.degree_cap >= 0) j["degree_cap"] = r.config.degree_cap;
    j["dedup"] = r.config.dedup;
    j["seed"] = r.config.seed;
    j["instances"] = r.instances;
    j["total_sets"] = r.total_sets;
    j["dedup_factor"] = r.dedup_factor;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json jr;
        jr["order"] = row.order;
        jr["groups"] = row.group_count;
        jr["sets"] = row.sets;
        jr["reps"] = row.reps;
        jr["discrepancies"] = row.discrepancies;
        if (row.dedup_unavailable) jr["dedup_unavailable"] = true;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    json ds = json::array();
    for (const auto& d : r.discrepancies) ds.push_back(json_of(d));
    j["discrepancies"] = ds;
    return j;
}

inline json json_of(const CensusRow& row) {
    json j;
    j["order"] = row.order;
    json entries = json::array();
    for (const auto& e : row.entries) {
        json je = json_of(e.instance);
        je["graph"] = e.graph;
        je["not_f2e"] = e.not_f2e;
        entries.push_back(je);
    }
    j["families"] = entries;
    json overlaps = json::array();
    for (const auto& o : row.overlaps)
        overlaps.push_back(json::array({json_of(o.a), json_of(o.b)}));
    j["overlaps"] = overlaps;
    return j;
}

inline json json_of(const ImplicationScanReport& r) {
    json j;
    j["t"] = r.config.t;
    j["orders"] = json::array({r.config.order_lo, r.config.order_hi});
    j["seed"] = r.config.seed;
    j["instances"] = r.instances;
    j["fractional_false"] = r.fractional_false;
    json vs = json::array();
    for (const auto& v : r.violations) {
        json jv;
        jv["instance"] = json_of(v.instance);
        jv["fractional_report"] = json_of(v.fractional_report);
        jv["near_report"] = json_of(v.near_report);
        vs.push_back(jv);
    }
    j["violations"] = vs;
    return j;
}

}  // namespace fracext
