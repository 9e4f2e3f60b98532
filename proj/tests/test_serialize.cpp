#include <doctest.h>

#include "fracext/serialize.hpp"
#include "test_util.hpp"

using namespace fracext;
using namespace testutil;

TEST_CASE("graph json round trip") {
    Graph g = circulant(9, {1, 3});
    json j = json_of(g);
    CHECK(j["n"] == 9);
    CHECK(j["provenance"]["kind"] == "circulant");
    CHECK(j["provenance"]["group"] == "Z9");
    Graph back = graph_from_json(j);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
}

TEST_CASE("certificate json round trips are lossless") {
    auto res = fpm_yes_witness(k4_bridge(), {});
    REQUIRE(fpm_extendable(res));
    const auto& w = std::get<FpmWitness>(res);
    EdgeOddCycleFactor f2 = factor_from_json(json_of(w.factor));
    CHECK(f2.matched_edges == w.factor.matched_edges);
    CHECK(f2.odd_cycles == w.factor.odd_cycles);

    DeficiencyWitness dw = fpm_no_witness(star(3));
    DeficiencyWitness dw2 = witness_from_json(json_of(dw));
    CHECK(dw2.independent_set == dw.independent_set);
    CHECK(dw2.blocker == dw.blocker);
    CHECK(json_of(dw)["I"].size() == 3);
    CHECK(json_of(dw)["U"] == std::vector<int>{0});

    HalfIntegralAssignment a = w.assignment;
    HalfIntegralAssignment a2 = assignment_from_json(json_of(a));
    REQUIRE(a2.values.size() == a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        CHECK(a2.values[i].u == a.values[i].u);
        CHECK(a2.values[i].v == a.values[i].v);
        CHECK(a2.values[i].halves == a.values[i].halves);
    }

    MatchingSpec m;
    m.edges = {{0, 1}, {4, 5}};
    MatchingSpec m2 = matching_from_json(json_of(m));
    CHECK(m2.edges == m.edges);
}

TEST_CASE("report json carries the declared schema") {
    ExtendabilityReport r = is_fractional_t_extendable(cycle(7), 1);
    json j = json_of(r);
    CHECK(j.contains("graph"));
    CHECK(j["t"] == 1);
    CHECK(j["mode"] == "fractional");
    CHECK(j["verdict"] == false);
    CHECK(j.contains("counterexample"));
    CHECK(j["counterexample"].contains("witness"));
    CHECK(j.contains("stats"));
    CHECK(j["stats"].contains("matchings_enumerated"));

    ScanConfig cfg;
    cfg.mode = ScanMode::F1e;
    cfg.order_lo = 3;
    cfg.order_hi = 6;
    cfg.threads = 1;
    ScanReport sr = verify_theorem(cfg);
    json js = json_of(sr);
    CHECK(js["mode"] == "f1e");
    CHECK(js["discrepancies"].is_array());
    CHECK(js["rows"].is_array());
    CHECK(js.contains("seed"));
    CHECK(js["dedup_factor"].is_number());
}

TEST_CASE("scan report json is deterministic") {
    ScanConfig cfg;
    cfg.mode = ScanMode::F2e;
    cfg.order_lo = 5;
    cfg.order_hi = 9;
    cfg.parity = ParityFilter::Odd;
    cfg.threads = 1;
    std::string a = json_of(verify_theorem(cfg)).dump(2);
    std::string b = json_of(verify_theorem(cfg)).dump(2);
    CHECK(a == b);
}
