#pragma once

// Command-line front end.  Subcommands: check {fpm|ext|pm|near},
// verify {f1e|f2e|impl}, census, export.  Machine-parseable JSON goes to
// stdout, human summaries to stderr; exit codes are 0 (holds / clean),
// 1 (fails / discrepancies), 2 (usage or budget error).

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracext/serialize.hpp"

namespace fracext::cli {

namespace detail {

inline std::pair<int, int> parse_orders(const std::string& text) {
    auto pos = text.find("..");
    if (pos == std::string::npos) {
        int n = std::stoi(text);
        return {n, n};
    }
    return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
}

inline Graph parse_circulant_spec(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos)
        throw ValidationError("circulant spec must look like n:a,b,c (got '" + text + "')");
    int n = std::stoi(text.substr(0, pos));
    std::vector<int> residues;
    std::stringstream ss(text.substr(pos + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ValidationError("empty residue in circulant spec '" + text + "'");
        residues.push_back(std::stoi(tok));
    }
    if (residues.empty()) throw ValidationError("circulant spec has no residues: '" + text + "'");
    return circulant(n, residues);
}

inline Graph parse_cayley_spec(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos)
        throw ValidationError("cayley spec must look like GROUP:SET (got '" + text + "')");
    AbelianGroup a = parse_group(text.substr(0, pos));
    ConnectionSet s = parse_connection_set(a, text.substr(pos + 1));
    return cayley_graph(a, s);
}

inline Graph parse_family_spec(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos)
        throw ValidationError("family spec must look like NAME:param (got '" + text + "')");
    auto id = family_from_name(text.substr(0, pos));
    if (!id) throw ValidationError("unknown family '" + text.substr(0, pos) + "'");
    return construct_family(*id, std::stoi(text.substr(pos + 1)));
}

inline MatchingSpec parse_forced(const std::string& text) {
    MatchingSpec m;
    if (text.empty()) return m;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos)
            throw ValidationError("forced edge must look like u-v (got '" + tok + "')");
        m.edges.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    return m;
}

struct GraphSpecFlags {
    std::string circulant, cayley, family, edges_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--circulant", circulant, "circulant n:a,b,c (one residue per +- pair)");
        cmd->add_option("--cayley", cayley, "Cayley graph GROUP:SET, e.g. Z3xZ3:{(1,0),(1,1)}");
        cmd->add_option("--family", family, "classification family NAME:param, e.g. Main_x:3");
        cmd->add_option("--edges", edges_file, "edge-list file (\"n m\" header then \"u v\" lines)");
    }

    Graph resolve() const {
        int given = !circulant.empty() + !cayley.empty() + !family.empty() + !edges_file.empty();
        if (given != 1)
            throw ValidationError("exactly one of --circulant/--cayley/--family/--edges is required");
        if (!circulant.empty()) return parse_circulant_spec(circulant);
        if (!cayley.empty()) return parse_cayley_spec(cayley);
        if (!family.empty()) return parse_family_spec(family);
        std::ifstream in(edges_file);
        if (!in) throw ValidationError("cannot open edge-list file '" + edges_file + "'");
        return parse_edge_list(in);
    }
};

inline int env_threads() {
    if (const char* env = std::getenv("FRACEXT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

inline json timestamp_field(std::chrono::steady_clock::time_point t0) {
    using namespace std::chrono;
    json j;
    j["unix_ms"] = duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
    j["elapsed_ms"] = duration<double, std::milli>(steady_clock::now() - t0).count();
    return j;
}

inline MatchingSymmetry parse_symmetry(const std::string& s) {
    if (s == "auto") return MatchingSymmetry::Auto;
    if (s == "none") return MatchingSymmetry::None;
    if (s == "cayley") return MatchingSymmetry::Cayley;
    throw ValidationError("unknown symmetry '" + s + "'");
}

inline void scan_summary(std::ostream& err, const ScanReport& r) {
    err << "order  groups  sets  reps  dedup  discrepancies\n";
    for (const auto& row : r.rows) {
        double factor = row.reps ? static_cast<double>(row.sets) / row.reps : 1.0;
        err << row.order << "  " << row.group_count << "  " << row.sets << "  " << row.reps
            << "  x" << factor << (row.dedup_unavailable ? " (dedup unavailable)" : "") << "  "
            << row.discrepancies << "\n";
    }
    err << "total: " << r.instances << " instances, " << r.discrepancies.size()
        << " discrepancies, " << r.elapsed_ms << " ms\n";
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"fractional matching extendability toolkit"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "decide a property of one graph, with certificate");
    std::string property;
    check->add_option("property", property, "fpm | ext | pm | near")
        ->required()
        ->check(CLI::IsMember({"fpm", "ext", "pm", "near"}));
    detail::GraphSpecFlags check_graph;
    check_graph.attach(check);
    int check_t = 1;
    check->add_option("--t", check_t, "matching size t");
    std::string check_mode = "fractional";
    check->add_option("--mode", check_mode, "ext mode: fractional | classical")
        ->check(CLI::IsMember({"fractional", "classical"}));
    std::string forced_spec;
    check->add_option("--forced", forced_spec, "forced edges for fpm, e.g. 0-1,3-4");
    std::string symmetry = "auto";
    check->add_option("--symmetry", symmetry, "matching enumeration symmetry: auto | none | cayley")
        ->check(CLI::IsMember({"auto", "none", "cayley"}));
    std::uint64_t check_seed = 0;
    check->add_option("--seed", check_seed, "seed recorded in the report");

    // verify
    auto* verify = app.add_subcommand("verify", "scan the classification over a range of orders");
    std::string verify_mode;
    verify->add_option("mode", verify_mode, "f1e | f2e | impl")
        ->required()
        ->check(CLI::IsMember({"f1e", "f2e", "impl"}));
    std::string orders_spec;
    verify->add_option("--orders", orders_spec, "order range lo..hi")->required();
    std::string parity = "any";
    verify->add_option("--parity", parity, "odd | even | any")
        ->check(CLI::IsMember({"odd", "even", "any"}));
    int deg_cap = -1;
    verify->add_option("--deg-cap", deg_cap, "max connection set size");
    bool no_dedup = false;
    verify->add_flag("--no-dedup", no_dedup, "scan all sets instead of orbit representatives");
    int threads = 0;
    verify->add_option("--threads", threads, "worker count (default: cores, or FRACEXT_THREADS)");
    std::uint64_t seed = 0;
    verify->add_option("--seed", seed, "seed recorded in the report");
    int impl_t = 2;
    verify->add_option("--t", impl_t, "t for the impl scan");

    // census
    auto* census = app.add_subcommand("census", "families present at each order, with overlaps");
    std::string census_orders;
    census->add_option("--orders", census_orders, "order range lo..hi")->required();
    bool census_no_engine = false;
    census->add_flag("--no-engine", census_no_engine, "skip the engine re-check of each member");

    // export
    auto* exp = app.add_subcommand("export", "write a graph in dot / json / edgelist form");
    detail::GraphSpecFlags export_graph;
    export_graph.attach(exp);
    std::string format;
    exp->add_option("--format", format, "dot | json | edgelist")
        ->required()
        ->check(CLI::IsMember({"dot", "json", "edgelist"}));
    std::string out_path;
    exp->add_option("--out", out_path, "output file (stdout when omitted)");

    try {
        std::vector<const char*> argv;
        argv.push_back("fracext");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (check->parsed()) {
            Graph g = check_graph.resolve();
            json j;
            j["command"] = "check";
            j["property"] = property;
            j["graph"] = json_of(g);
            j["seed"] = check_seed;
            int exit_code = 0;
            if (property == "fpm") {
                MatchingSpec forced = detail::parse_forced(forced_spec);
                FpmExtendResult res = fpm_yes_witness(g, forced);
                if (fpm_extendable(res)) {
                    const auto& w = std::get<FpmWitness>(res);
                    j["verdict"] = true;
                    j["certificate"] = {{"factor", json_of(w.factor)},
                                        {"assignment", json_of(w.assignment)}};
                } else {
                    const auto& o = std::get<FpmObstruction>(res);
                    j["verdict"] = false;
                    j["certificate"] = {{"witness", json_of(o.witness)}, {"removed", o.removed}};
                    exit_code = 1;
                }
            } else if (property == "pm") {
                auto m = has_perfect_matching(g);
                j["verdict"] = m.has_value();
                if (m) j["certificate"] = {{"matching", json_of(*m)}};
                else exit_code = 1;
            } else if (property == "ext") {
                ExtendabilityOptions opts;
                opts.symmetry = detail::parse_symmetry(symmetry);
                ExtendabilityReport rep = check_mode == "classical"
                                              ? is_t_extendable_classical(g, check_t, opts)
                                              : is_fractional_t_extendable(g, check_t, opts);
                j["report"] = json_of(rep);
                j["verdict"] = rep.verdict;
                exit_code = rep.verdict ? 0 : 1;
            } else {  // near
                NearExtendabilityOptions opts;
                opts.base.symmetry = detail::parse_symmetry(symmetry);
                ExtendabilityReport rep = is_t_near_extendable(g, check_t, opts);
                j["report"] = json_of(rep);
                j["verdict"] = rep.verdict;
                exit_code = rep.verdict ? 0 : 1;
            }
            j["timestamp"] = detail::timestamp_field(t0);
            out << j.dump(2) << "\n";
            return exit_code;
        }

        if (verify->parsed()) {
            auto [lo, hi] = detail::parse_orders(orders_spec);
            int worker_count = threads > 0 ? threads : detail::env_threads();
            if (verify_mode == "impl") {
                ImplicationScanConfig cfg;
                cfg.order_lo = lo;
                cfg.order_hi = hi;
                cfg.t = impl_t;
                cfg.threads = worker_count;
                cfg.seed = seed;
                ImplicationScanReport rep = implication_scan(cfg);
                json j = json_of(rep);
                j["timestamp"] = detail::timestamp_field(t0);
                out << j.dump(2) << "\n";
                err << "impl scan: " << rep.instances << " instances, " << rep.fractional_false
                    << " near-checked, " << rep.violations.size() << " violations\n";
                return rep.violations.empty() ? 0 : 1;
            }
            ScanConfig cfg;
            cfg.mode = verify_mode == "f1e" ? ScanMode::F1e : ScanMode::F2e;
            cfg.order_lo = lo;
            cfg.order_hi = hi;
            cfg.parity = parity == "odd" ? ParityFilter::Odd
                                         : (parity == "even" ? ParityFilter::Even : ParityFilter::Any);
            cfg.degree_cap = deg_cap;
            cfg.dedup = !no_dedup;
            cfg.threads = worker_count;
            cfg.seed = seed;
            ScanReport rep = verify_theorem(cfg);
            json j = json_of(rep);
            j["timestamp"] = detail::timestamp_field(t0);
            out << j.dump(2) << "\n";
            detail::scan_summary(err, rep);
            return rep.discrepancies.empty() ? 0 : 1;
        }

        if (census->parsed()) {
            auto [lo, hi] = detail::parse_orders(census_orders);
            std::vector<int> orders;
            for (int n = lo; n <= hi; ++n) orders.push_back(n);
            auto rows = family_census(orders, !census_no_engine);
            json j;
            j["command"] = "census";
            json jr = json::array();
            for (const auto& row : rows) jr.push_back(json_of(row));
            j["rows"] = jr;
            j["timestamp"] = detail::timestamp_field(t0);
            out << j.dump(2) << "\n";
            return 0;
        }

        if (exp->parsed()) {
            Graph g = export_graph.resolve();
            std::string payload;
            if (format == "dot") payload = to_dot(g);
            else if (format == "edgelist") payload = format_edge_list(g);
            else payload = json_of(g).dump(2) + "\n";
            if (out_path.empty()) {
                out << payload;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) throw ValidationError("cannot open output file '" + out_path + "'");
                f << payload;
            }
            return 0;
        }
        throw ValidationError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::stringstream help;
            app.exit(e, help, help);
            out << help.str();
            return 0;
        }
        out << json{{"error", e.what()}}.dump(2) << "\n";
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << json{{"error", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace fracext::cli
