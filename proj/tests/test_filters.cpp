#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "metascen/filters.hpp"
#include "metascen/serialize.hpp"
#include "oracles.hpp"

using namespace metascen;
using namespace metascen::filters;

namespace {

scenario make(cluster_set entry, arrangement internal, cluster_set exit, shortcut_set sc) {
    scenario s;
    s.entry = entry;
    s.internal = internal;
    s.exit = exit;
    s.shortcuts = sc;
    return s;
}

std::set<int> keys_of(const std::vector<scenario>& list) {
    std::set<int> out;
    for (const scenario& s : list) out.insert(s.key());
    return out;
}

}  // namespace

TEST_CASE("rule A agrees with brute-force reachability on all 216 scenarios") {
    int eliminated = 0;
    for (const scenario& s : enumerate_space()) {
        CHECK(connected_flow(s) == oracles::connected_flow_brute(s));
        if (!connected_flow(s)) ++eliminated;
    }
    CHECK(eliminated == 32);
}

TEST_CASE("rule A fails exactly for the four disconnected internal configurations") {
    const std::set<std::tuple<int, int, int>> expected = {
        {0, 1, 1},  // entry {P}, top-down, exit {S}
        {0, 1, 2},  // entry {P}, top-down, exit {P,S}
        {1, 0, 0},  // entry {S}, bottom-up, exit {P}
        {1, 0, 2},  // entry {S}, bottom-up, exit {P,S}
    };
    for (const scenario& s : enumerate_space()) {
        const bool in_expected = expected.contains(
            {s.entry.index(), static_cast<int>(s.internal), s.exit.index()});
        CHECK(connected_flow(s) == !in_expected);
    }
}

TEST_CASE("rule B agrees with exhaustive path enumeration") {
    for (const scenario& s : enumerate_space()) {
        CHECK(process_on_io_path(s) == oracles::process_on_path_brute(s));
    }
    SUBCASE("pinned cases") {
        for (int topo = 1; topo <= 8; ++topo) {
            const shortcut_set sc = topology_shortcuts(topo);
            CHECK_FALSE(process_on_io_path(make(cluster_set::s(), arrangement::top_down,
                                                cluster_set::s(), sc)));
            CHECK(process_on_io_path(make(cluster_set::p(), arrangement::bottom_up,
                                          cluster_set::p(), sc)));
            CHECK(process_on_io_path(make(cluster_set::s(), arrangement::top_down,
                                          cluster_set::ps(), sc)));
        }
    }
    SUBCASE("named-only mode spares the bottom-up knowledge loop") {
        const scenario td = make(cluster_set::s(), arrangement::top_down, cluster_set::s(), {});
        const scenario bu = make(cluster_set::s(), arrangement::bottom_up, cluster_set::s(), {});
        CHECK_FALSE(process_on_io_path_named_only(td));
        CHECK(process_on_io_path_named_only(bu));
        CHECK_FALSE(process_on_io_path(bu));  // strict reading removes it too
    }
}

TEST_CASE("stage-2 rule targets integrated internals on the baseline topology only") {
    CHECK(filter2_integration_without_feedback(
        make(cluster_set::p(), arrangement::bidirectional, cluster_set::ps(), {})));
    CHECK_FALSE(filter2_integration_without_feedback(
        make(cluster_set::p(), arrangement::bidirectional, cluster_set::ps(), {shortcut::oi})));
    CHECK_FALSE(filter2_integration_without_feedback(
        make(cluster_set::p(), arrangement::bottom_up, cluster_set::p(), {})));
    int count = 0;
    for (const scenario& s : enumerate_space()) {
        if (filter2_integration_without_feedback(s)) ++count;
    }
    CHECK(count == 9);
}

TEST_CASE("stage-3 representative rule") {
    const std::vector<scenario> space = enumerate_space();
    const scenario single = make(cluster_set::p(), arrangement::bottom_up, cluster_set::ps(),
                                 {shortcut::oi, shortcut::fi});
    const scenario parallel = make(cluster_set::ps(), arrangement::bottom_up, cluster_set::ps(),
                                   {shortcut::oi, shortcut::fi});
    CHECK_FALSE(filter3_representative(single, space));
    CHECK(filter3_representative(parallel, space));
    CHECK(parallel.key() == appendix2_catalog().find("S10")->config.key());

    // Bidirectional configurations are untouched: S7 is its own representative
    // even though S14 differs from it only by the added entry.
    const scenario s7 = appendix2_catalog().find("S7")->config;
    CHECK(filter3_representative(s7, space));

    // Any scenario is a representative when its parallel variant is absent.
    CHECK(filter3_representative(single, std::vector<scenario>{single}));
}

TEST_CASE("stage-4 rule keeps exactly the priority keys") {
    CHECK(filter4_priority(appendix2_catalog().find("S17")->config));
    CHECK_FALSE(filter4_priority(make(cluster_set::s(), arrangement::top_down, cluster_set::s(), {})));
    for (int key : appendix2_catalog().distinct_keys()) {
        CHECK(filter4_priority(scenario::from_key(key)));
    }
}

TEST_CASE("shipped pipeline reproduces the priority set exactly") {
    const pipeline_result result = run_pipeline(pipeline_config::shipped(), enumerate_space());

    CHECK(result.stages[0].input_count == 216);
    CHECK(result.stages[0].output_count == 184);
    CHECK(result.stages[0].eliminations.size() == 32);
    CHECK(result.stages[0].reference_target == 178);
    CHECK_FALSE(result.stages[0].matches_reference_target);

    CHECK(result.stages[1].output_count == 175);
    CHECK(result.stages[1].eliminations.size() == 9);

    CHECK(result.stages[2].output_count == 175);  // pass-through stage
    CHECK(result.stages[2].eliminations.empty());

    CHECK(result.stages[3].output_count == 23);
    CHECK(result.stages[3].note.find("24 labels") != std::string::npos);

    std::set<int> expected;
    for (int key : appendix2_catalog().distinct_keys()) expected.insert(key);
    CHECK(keys_of(result.survivors) == expected);

    // Conservation and chaining.
    for (std::size_t i = 0; i < result.stages.size(); ++i) {
        const stage_report& r = result.stages[i];
        CHECK(r.input_count == r.output_count + static_cast<int>(r.eliminations.size()));
        if (i > 0) CHECK(result.stages[i - 1].output_count == r.input_count);
    }
}

TEST_CASE("rule A eliminations in the pipeline match the brute-force set") {
    const pipeline_result result = run_pipeline(pipeline_config::shipped(), enumerate_space());
    std::set<int> eliminated_by_rule_a;
    for (const elimination& e : result.stages[0].eliminations) {
        CHECK(e.rule_name == "connected-flow");
        eliminated_by_rule_a.insert(e.subject.key());
    }
    std::set<int> expected;
    for (const scenario& s : enumerate_space()) {
        if (!oracles::connected_flow_brute(s)) expected.insert(s.key());
    }
    CHECK(eliminated_by_rule_a == expected);
}

TEST_CASE("single-rule run matches the documented survivor count") {
    const pipeline_config cfg = pipeline_config::shipped().only_rule("connected-flow");
    const pipeline_result result = run_pipeline(cfg, enumerate_space());
    CHECK(result.survivors.size() == 184);
}

TEST_CASE("the documented stricter rules cut below the priority set") {
    // With Rule B and the stage-3 consolidation active, three catalog
    // configurations fall out before stage 4: the pure knowledge responder
    // (S5) and the two single-entry bottom-up rows (S1, S2).
    const pipeline_result result = run_pipeline(pipeline_config::strict_rules(), enumerate_space());
    CHECK(result.stages[0].output_count == 152);  // 216 - 32 (rule A) - 32 (rule B)
    CHECK(result.stages[1].output_count == 144);
    CHECK(result.survivors.size() == 20);

    std::set<int> missing;
    for (int key : appendix2_catalog().distinct_keys()) {
        if (!keys_of(result.survivors).contains(key)) missing.insert(key);
    }
    const std::set<int> expected_missing = {
        appendix2_catalog().find("S1")->config.key(),
        appendix2_catalog().find("S2")->config.key(),
        appendix2_catalog().find("S5")->config.key(),
    };
    CHECK(missing == expected_missing);
}

TEST_CASE("rule B strictness modes eliminate the expected families") {
    pipeline_config cfg = pipeline_config::strict_rules().only_rule("process-on-io-path");
    // Strict reading: 7 of the 27 internal configurations lack a processing
    // path from input to output.
    CHECK(run_pipeline(cfg, enumerate_space()).survivors.size() == 160);  // 216 - 7 * 8
    cfg.rules[0].predicate.mode = rule_b_mode::named_only;
    CHECK(run_pipeline(cfg, enumerate_space()).survivors.size() == 208);  // 216 - 8
}

TEST_CASE("empty space yields four zero-count reports") {
    const pipeline_result result = run_pipeline(pipeline_config::shipped(), std::vector<scenario>{});
    CHECK(result.survivors.empty());
    for (const stage_report& r : result.stages) {
        CHECK(r.input_count == 0);
        CHECK(r.output_count == 0);
        CHECK(r.eliminations.empty());
    }
}

TEST_CASE("configs with no rules are rejected") {
    pipeline_config cfg;
    cfg.name = "empty";
    CHECK_THROWS_AS(run_pipeline(cfg, enumerate_space()), config_error);
}

TEST_CASE("eliminations carry the first matching rule") {
    pipeline_config cfg;
    cfg.name = "two-rules";
    cfg.rules = {
        {"first", 1, {predicate_kind::exit_reachable_from_entry}, rule_action::keep_only_if_true},
        {"second", 1, {predicate_kind::process_on_io_path}, rule_action::keep_only_if_true},
    };
    const pipeline_result result = run_pipeline(cfg, enumerate_space());
    for (const elimination& e : result.stages[0].eliminations) {
        if (!connected_flow(e.subject)) {
            CHECK(e.rule_name == "first");
        } else {
            CHECK(e.rule_name == "second");
        }
    }
    // Disabling a rule re-admits exactly the scenarios it caught.
    const pipeline_result only_first = run_pipeline(cfg.only_rule("first"), enumerate_space());
    std::set<int> readmitted;
    for (const scenario& s : only_first.survivors) {
        if (!keys_of(result.survivors).contains(s.key())) readmitted.insert(s.key());
    }
    std::set<int> expected;
    for (const elimination& e : result.stages[0].eliminations) {
        if (e.rule_name == "second") expected.insert(e.subject.key());
    }
    CHECK(readmitted == expected);
}

TEST_CASE("custom attribute clauses filter on the encoded attributes") {
    pipeline_config cfg;
    cfg.name = "custom";
    predicate_spec pred;
    pred.kind = predicate_kind::custom_attribute_clause;
    pred.require_attrs = {attribute_vector::mon};
    pred.forbid_attrs = {attribute_vector::sc_oe};
    cfg.rules = {{"mon-no-oe", 1, pred, rule_action::keep_only_if_true}};
    const pipeline_result result = run_pipeline(cfg, enumerate_space());
    for (const scenario& s : result.survivors) {
        const attribute_vector v = attributes_of(s);
        CHECK(v.test(attribute_vector::mon));
        CHECK_FALSE(v.test(attribute_vector::sc_oe));
    }
    // mon holds for 2/3 of arrangements, no OE for 4/8 topologies.
    CHECK(result.survivors.size() == 216 * 2 / 3 / 2);
}

TEST_CASE("pipeline configs round-trip through JSON") {
    const pipeline_config cfg = pipeline_config::strict_rules();
    const pipeline_config back = pipeline_config::from_json(cfg.to_json());
    CHECK(back.rules.size() == cfg.rules.size());
    const auto a = run_pipeline(cfg, enumerate_space());
    const auto b = run_pipeline(back, enumerate_space());
    CHECK(keys_of(a.survivors) == keys_of(b.survivors));

    CHECK_THROWS_AS(pipeline_config::from_json(nlohmann::json::parse(
                        R"({"stages":[{"stage":1,"rules":[{"name":"x","predicate":"nope"}]}]})")),
                    config_error);
    CHECK_THROWS_AS(pipeline_config::from_json(nlohmann::json::parse(R"({"no_stages":1})")),
                    config_error);
}

TEST_CASE("identical runs serialize identically") {
    const pipeline_config cfg = pipeline_config::shipped();
    const std::string a =
        dump_json(pipeline_result_to_json(cfg, run_pipeline(cfg, enumerate_space())));
    const std::string b =
        dump_json(pipeline_result_to_json(cfg, run_pipeline(cfg, enumerate_space())));
    CHECK(a == b);
}

TEST_CASE("the shipped config files load and reproduce the embedded configs") {
    const std::string root = METASCEN_SOURCE_DIR;
    for (const char* name : {"shipped", "strict-rules"}) {
        std::ifstream in(root + "/configs/" + name + ".json");
        REQUIRE(in.good());
        std::ostringstream buf;
        buf << in.rdbuf();
        const pipeline_config from_file =
            pipeline_config::from_json(nlohmann::json::parse(buf.str()));
        CHECK(from_file.name == name);
        const pipeline_config embedded = std::string(name) == "shipped"
                                             ? pipeline_config::shipped()
                                             : pipeline_config::strict_rules();
        CHECK(keys_of(run_pipeline(from_file, enumerate_space()).survivors) ==
              keys_of(run_pipeline(embedded, enumerate_space()).survivors));
    }
}
