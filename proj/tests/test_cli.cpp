#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "metascen/cli.hpp"

namespace {

struct cli_result {
    int code = 0;
    std::string out;
    std::string err;
};

cli_result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    cli_result r;
    r.code = metascen::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("enumerate summary and counts") {
    const cli_result base = run({"enumerate"});
    CHECK(base.code == 0);
    CHECK(base.out == "216 scenarios (3 internal x 9 cross-cluster x 8 topologies)\n");

    CHECK(run({"enumerate", "--topology", "8", "--count"}).out == "27\n");
    CHECK(run({"enumerate", "--internal", "bidirectional", "--count"}).out == "72\n");
    CHECK(run({"enumerate", "--entry", "ps", "--exit", "s", "--count"}).out == "24\n");
    CHECK(run({"enumerate", "--topology", "9"}).code == 1);

    const cli_result full = run({"enumerate", "--full", "--format", "json"});
    const auto parsed = nlohmann::json::parse(full.out);
    CHECK(parsed["count"] == 216);
    CHECK(parsed["scenarios"].size() == 216);
}

TEST_CASE("filter pipeline surface") {
    const cli_result table = run({"filter"});
    CHECK(table.code == 0);
    CHECK(table.out.find("final: 23 scenarios") != std::string::npos);
    CHECK(table.out.find("note:") != std::string::npos);

    const cli_result only = run({"filter", "--only-rule", "connected-flow"});
    CHECK(only.out.find("final: 184 scenarios") != std::string::npos);

    const cli_result json = run({"filter", "--format", "json"});
    const auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed["final_count"] == 23);
    CHECK(parsed["stages"].size() == 4);
    CHECK(parsed["stages"][0]["output_count"] == 184);
    CHECK(parsed["stages"][0]["matches_reference_target"] == false);

    // Strict mode flags the unreproducible stage targets.
    CHECK(run({"filter", "--strict"}).code == 3);

    const cli_result missing = run({"filter", "--config", "/no/such/file.json"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error") != std::string::npos);
}

TEST_CASE("malformed config files fail with a diagnostic") {
    const std::string path = "malformed_config_test.json";
    {
        std::ofstream f(path);
        f << "{\"stages\": [{\"stage\": 1, \"rules\": [{\"name\": \"x\"}]}]}";
    }
    const cli_result r = run({"filter", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("catalog output and filter status") {
    const cli_result dup = run({"catalog", "--duplicates"});
    CHECK(dup.out.find("S15 = S19") != std::string::npos);

    const cli_result t1 = run({"catalog", "--table1", "--filter-status"});
    CHECK(t1.code == 0);
    int eliminated = 0;
    std::istringstream lines(t1.out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find("[eliminated") != std::string::npos) ++eliminated;
    }
    CHECK(eliminated == 2);
    CHECK(t1.out.find("T2") != std::string::npos);

    const cli_result json = run({"catalog", "--format", "json", "--filter-status"});
    const auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed["entries"].size() == 24);
    for (const auto& row : parsed["entries"]) CHECK(row["filter_status"] == "kept");
}

TEST_CASE("classify resolves notation against the catalog") {
    const cli_result r = run({"classify", "I->{P,S}, P<->S, {P,S}->O, Topology 7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tier: expert-adaptive") != std::string::npos);
    CHECK(r.out.find("S17") != std::string::npos);

    const cli_result conflict =
        run({"classify", "I->{P,S}, P->S, {P,S}->O, Topology 8", "--format", "json"});
    const auto parsed = nlohmann::json::parse(conflict.out);
    CHECK(parsed["tier"] == "developing");
    CHECK(parsed["conflict"] == true);

    CHECK(run({"classify", "not a scenario"}).code == 1);
}

TEST_CASE("parse and fmt round-trip") {
    const cli_result parsed = run({"parse", "I -> [P, P->S, P ->] O, O->F->E->I + F->I"});
    CHECK(parsed.code == 0);
    CHECK(parsed.out.find("key: 3") != std::string::npos);

    const cli_result json = run({"parse", "nonsense", "--format", "json"});
    CHECK(json.code == 1);
    const auto body = nlohmann::json::parse(json.out);
    CHECK(body["scenario"].is_null());
    CHECK(!body["diagnostics"].empty());

    const cli_result fmt =
        run({"fmt", "I->P, P<->S, P->O, O->F->E->I + O->I", "--style", "bracketed"});
    CHECK(fmt.out == "I -> [P, P<->S, P ->] O, O->F->E->I + O->I\n");

    const cli_result uni = run({"fmt", "I->S, S->P, S->O, Topology 1", "--style",
                                "topology-short", "--unicode"});
    CHECK(uni.out == "I→S, S→P, S→O, Topology 1\n");
}

TEST_CASE("lattice DOT has one source and one sink") {
    const cli_result r = run({"lattice", "--catalog", "appendix2"});
    CHECK(r.code == 0);
    REQUIRE(r.out.rfind("digraph", 0) == 0);
    // Count cover-edge endpoints.
    std::map<std::string, int> out_degree;
    std::map<std::string, int> in_degree;
    std::istringstream lines(r.out);
    std::string line;
    int nodes = 0;
    while (std::getline(lines, line)) {
        if (line.find("[label=") != std::string::npos) {
            ++nodes;
            continue;
        }
        const auto arrow = line.find(" -> ");
        if (arrow == std::string::npos || line.find("rankdir") != std::string::npos) continue;
        const std::string from = line.substr(2, arrow - 2);
        std::string to = line.substr(arrow + 4);
        to = to.substr(0, to.find(';'));
        ++out_degree[from];
        ++in_degree[to];
    }
    int sources = 0;
    int sinks = 0;
    for (int i = 0; i < nodes; ++i) {
        const std::string id = "c" + std::to_string(i);
        if (!in_degree.contains(id)) ++sources;
        if (!out_degree.contains(id)) ++sinks;
    }
    CHECK(sources == 1);
    CHECK(sinks == 1);
}

TEST_CASE("implications findings report the documented counterexamples") {
    const cli_result r = run({"implications", "--findings", "--format", "json"});
    CHECK(r.code == 0);
    const auto body = nlohmann::json::parse(r.out);
    REQUIRE(body.contains("findings"));
    const auto& findings = body["findings"];
    REQUIRE(findings.size() == 5);

    const auto& gateway_checks = findings[0]["checks"];
    CHECK(gateway_checks[0]["holds"] == true);
    CHECK(gateway_checks[1]["holds"] == true);
    CHECK(gateway_checks[2]["holds"] == false);
    CHECK(gateway_checks[2]["counterexamples"] ==
          nlohmann::json::array({"S2", "S4", "S5"}));

    CHECK(findings[1]["checks"][0]["holds"] == false);  // multiple expert routes
    CHECK(findings[2]["checks"][0]["holds"] == false);  // accumulation violated once
    CHECK(findings[3]["checks"][0]["holds"] == false);  // S22 breaks the threshold reading
    CHECK(findings[3]["checks"][0]["counterexamples"] == nlohmann::json::array({"S22"}));

    const cli_result verify =
        run({"implications", "--verify", "tier:developing => sc:OI", "--format", "json"});
    const auto vbody = nlohmann::json::parse(verify.out);
    CHECK(vbody["verify"][0]["holds"] == true);
}

TEST_CASE("trajectory command prints named pathways and shortest paths") {
    const cli_result all = run({"trajectory"});
    CHECK(all.code == 0);
    CHECK(all.out.find("fca-mainstream:") != std::string::npos);
    CHECK(all.out.find("specialist:") != std::string::npos);

    const cli_result named = run({"trajectory", "--named", "specialist", "--format", "json"});
    const auto body = nlohmann::json::parse(named.out);
    REQUIRE(body.size() == 1);
    CHECK(body[0]["name"] == "specialist");
    CHECK(body[0]["monotone"] == false);

    const cli_result steps = run({"trajectory", "--steps", "S6,S7,S14,S17", "--format", "json"});
    const auto custom = nlohmann::json::parse(steps.out);
    CHECK(custom[0]["monotone"] == true);

    const cli_result paths = run({"trajectory", "--from", "S1", "--to", "S17"});
    CHECK(paths.code == 0);
    CHECK(paths.out.find("S1 -> S6 -> S17") != std::string::npos);

    CHECK(run({"trajectory", "--named", "nope"}).code == 1);
}

TEST_CASE("export targets") {
    const cli_result cxt = run({"export", "--what", "context", "--format", "cxt"});
    CHECK(cxt.out.rfind("B\n", 0) == 0);
    CHECK(cxt.out.find("tier:expert") != std::string::npos);

    const cli_result csv = run({"export", "--what", "context", "--format", "csv"});
    CHECK(csv.out.find(",entry:P,") != std::string::npos);

    const cli_result graph =
        run({"export", "--what", "graph", "--scenario", "I->P, P->S, P->O, O->F->E->I"});
    CHECK(graph.out.find("O -> F") != std::string::npos);

    CHECK(run({"export", "--what", "nothing"}).code == 1);
    CHECK(run({"export", "--what", "space", "--format", "dot"}).code == 1);
}

TEST_CASE("--out writes the file and keeps stdout quiet") {
    const std::string path = "cli_out_test.json";
    const cli_result r = run({"--out", path, "catalog", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(nlohmann::json::parse(buf.str())["entries"].size() == 24);
    std::remove(path.c_str());
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::vector<std::string>> invocations = {
        {"enumerate", "--full", "--format", "json"},
        {"filter", "--format", "json"},
        {"lattice", "--format", "json"},
        {"implications", "--findings", "--format", "json"},
        {"trajectory", "--format", "json"},
        {"catalog", "--format", "json"},
        {"export", "--what", "context", "--format", "cxt"},
    };
    for (const auto& args : invocations) {
        const cli_result a = run(args);
        const cli_result b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("unknown subcommands fail with usage text") {
    const cli_result r = run({"frobnicate"});
    CHECK(r.code != 0);
    CHECK(!r.err.empty());
}
