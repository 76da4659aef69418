#include <doctest.h>

#include <random>

#include "metascen/catalog.hpp"
#include "metascen/notation.hpp"

using namespace metascen;
using namespace metascen::notation;

namespace {

scenario must_parse(std::string_view text) {
    const parse_result r = parse_scenario(text);
    REQUIRE_MESSAGE(r.ok(), "failed to parse: " << text);
    return *r.value;
}

bool has_error(const parse_result& r, diagnostic_code code) {
    for (const parse_diagnostic& d : r.diagnostics) {
        if (d.level == severity::error && d.code == code) return true;
    }
    return false;
}

int warning_count(const parse_result& r) {
    int n = 0;
    for (const parse_diagnostic& d : r.diagnostics) {
        if (d.level == severity::warning) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("parses the bracketed catalog form") {
    const scenario s = must_parse("I → [P, P→S, P→] O, O→F→E→I + F→I");
    CHECK(s.entry == cluster_set::p());
    CHECK(s.internal == arrangement::bottom_up);
    CHECK(s.exit == cluster_set::p());
    CHECK(topology_id(s.shortcuts) == 4);
}

TEST_CASE("parses the topology-short form") {
    const scenario s = must_parse("I→{P,S}, P↔S, {P,S}→O, Topology 8");
    CHECK(s.entry == cluster_set::ps());
    CHECK(s.internal == arrangement::bidirectional);
    CHECK(s.exit == cluster_set::ps());
    CHECK(s.shortcuts == shortcut_set{shortcut::oe, shortcut::oi, shortcut::fi});
}

TEST_CASE("parses the flat form with an explicit baseline chain") {
    const scenario s = must_parse("I→S, S→P, S→O, O→F→E→I");
    CHECK(s.entry == cluster_set::s());
    CHECK(s.internal == arrangement::top_down);
    CHECK(s.exit == cluster_set::s());
    CHECK(s.shortcuts.empty());
}

TEST_CASE("warns when a backbone edge is listed as a shortcut") {
    const parse_result r = parse_scenario(
        "I → [S, S→P, S→] O, O→F→E→I + E→I + F→I");
    REQUIRE(r.ok());
    CHECK(r.value->entry == cluster_set::s());
    CHECK(r.value->internal == arrangement::top_down);
    CHECK(r.value->exit == cluster_set::s());
    CHECK(r.value->shortcuts == shortcut_set{shortcut::fi});
    CHECK(warning_count(r) == 1);
    CHECK(r.diagnostics[0].code == diagnostic_code::redundant_backbone_shortcut);
    CHECK(r.diagnostics[0].length > 0);
}

TEST_CASE("reads the bracket parts in either order") {
    // One catalog row interleaves the arrangement and the entry set.
    const scenario s =
        must_parse("I→ [P→S, {P,S},P→] O, O→F→E→I + F→I");
    CHECK(s.entry == cluster_set::ps());
    CHECK(s.internal == arrangement::bottom_up);
    CHECK(s.exit == cluster_set::p());
    CHECK(s.shortcuts == shortcut_set{shortcut::fi});
}

TEST_CASE("accepts a consistent parenthesized topology annotation quietly") {
    const parse_result r = parse_scenario(
        "I → [{P,S}, P⇌S, {P,S}→] O, "
        "O→F→E→I + O→E + O→I + F→I (Topology 8)");
    REQUIRE(r.ok());
    CHECK(warning_count(r) == 0);
    CHECK(topology_id(r.value->shortcuts) == 8);
}

TEST_CASE("flags a topology annotation that disagrees with the shortcuts") {
    const parse_result r =
        parse_scenario("I->P, P->S, P->O, O->F->E->I + O->I (Topology 8)");
    REQUIRE(r.ok());
    CHECK(r.value->shortcuts == shortcut_set{shortcut::oi});
    CHECK(warning_count(r) == 1);
    CHECK(r.diagnostics[0].code == diagnostic_code::topology_mismatch);
}

TEST_CASE("accepts ascii arrows and arbitrary whitespace") {
    const scenario a = must_parse("I->P,P<->S,{P ,S}->O,Topology 7");
    const scenario b = must_parse("  I → P , P ⇌ S , { P , S } → O , topology 7 ");
    CHECK(same_configuration(a, b));
    CHECK(a.internal == arrangement::bidirectional);
    CHECK(topology_id(a.shortcuts) == 7);
}

TEST_CASE("both unidirectional tokens combine into the bidirectional arrangement") {
    const scenario s = must_parse("I->P, P->S, S->P, P->O, O->F->E->I");
    CHECK(s.internal == arrangement::bidirectional);
}

TEST_CASE("documented parse errors") {
    CHECK(has_error(parse_scenario("P->S, P->O, O->F->E->I"), diagnostic_code::empty_entry));
    CHECK(has_error(parse_scenario("I->P, P->S, O->F->E->I"), diagnostic_code::empty_exit));
    CHECK(has_error(parse_scenario("I->P, P->S, P<->S, P->O, O->F->E->I"),
                    diagnostic_code::conflicting_arrangement));
    CHECK(has_error(parse_scenario("I->P, P->S, P->O, O->F->E"), diagnostic_code::missing_backbone));
    CHECK(has_error(parse_scenario("I->P, P->S, P->O, F->E->I"), diagnostic_code::missing_backbone));
    CHECK(has_error(parse_scenario("I->P, P->O, O->F->E->I"), diagnostic_code::missing_arrangement));
    CHECK(has_error(parse_scenario("I->P, P->S, P->O, Topology 9"),
                    diagnostic_code::topology_out_of_range));
    CHECK(has_error(parse_scenario("I->P, P->S, E->P, P->O, O->F->E->I"),
                    diagnostic_code::unknown_token));
    CHECK_FALSE(parse_scenario("").ok());
}

TEST_CASE("missing external part parses with a baseline warning") {
    const parse_result r = parse_scenario("I->P, P->S, P->O");
    REQUIRE(r.ok());
    CHECK(r.value->shortcuts.empty());
    CHECK(warning_count(r) == 1);
    CHECK(r.diagnostics[0].code == diagnostic_code::assumed_baseline_topology);
}

TEST_CASE("broken-link operator flags the result as non-canonical") {
    const parse_result r = parse_scenario("I->P, P->S, P->O, O->F->E->I, O⊗F");
    REQUIRE(r.ok());
    CHECK_FALSE(r.canonical);
    CHECK(warning_count(r) >= 1);
}

TEST_CASE("unknown trailing annotations warn but do not fail") {
    const parse_result r = parse_scenario("I->P, P->S, P->O, O->F->E->I, experimental variant");
    REQUIRE(r.ok());
    CHECK(warning_count(r) == 1);
    CHECK(r.diagnostics[0].code == diagnostic_code::unknown_annotation);
}

TEST_CASE("formatting matches the documented shapes") {
    scenario s;
    s.entry = cluster_set::p();
    s.internal = arrangement::bidirectional;
    s.exit = cluster_set::p();
    s.shortcuts = {shortcut::oi};
    CHECK(format_scenario(s, notation_style::bracketed) ==
          "I -> [P, P<->S, P ->] O, O->F->E->I + O->I");

    scenario t;
    t.entry = cluster_set::s();
    t.internal = arrangement::top_down;
    t.exit = cluster_set::s();
    CHECK(format_scenario(t, notation_style::topology_short) == "I->S, S->P, S->O, Topology 1");

    scenario u;
    u.entry = cluster_set::p();
    u.internal = arrangement::bottom_up;
    u.exit = cluster_set::p();
    u.shortcuts = {shortcut::fi};
    CHECK(format_scenario(u, notation_style::flat) == "I->P, P->S, P->O, O->F->E->I + F->I");
    CHECK(format_scenario(u, notation_style::flat, {true}) ==
          "I→P, P→S, P→O, O→F→E→I + F→I");
}

TEST_CASE("round-trip over the whole space in every style") {
    const std::vector<scenario> space = enumerate_space();
    for (const scenario& s : space) {
        for (notation_style style :
             {notation_style::bracketed, notation_style::flat, notation_style::topology_short}) {
            for (bool unicode : {false, true}) {
                const std::string text = format_scenario(s, style, {unicode});
                const parse_result r = parse_scenario(text);
                REQUIRE_MESSAGE(r.ok(), "round-trip parse failed on: " << text);
                CHECK_MESSAGE(r.value->key() == s.key(), "round-trip key drift on: " << text);
                CHECK(warning_count(r) == 0);
            }
        }
    }
}

TEST_CASE("fuzzing never crashes the parser") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> len(0, 60);
    std::uniform_int_distribution<int> byte(0, 255);
    const std::string vocab = "IPSOFE{}[](),+-><→↔⇌⊗ Topology 0123456789";
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    for (int i = 0; i < 10000; ++i) {
        std::string input;
        const int n = len(rng);
        const bool vocab_based = i % 2 == 0;
        for (int k = 0; k < n; ++k) {
            input += vocab_based ? vocab[pick(rng)] : static_cast<char>(byte(rng));
        }
        const parse_result r = parse_scenario(input);
        // Either a scenario or at least one error diagnostic.
        if (!r.ok()) {
            bool any_error = false;
            for (const parse_diagnostic& d : r.diagnostics) {
                any_error = any_error || d.level == severity::error;
            }
            CHECK(any_error);
        }
        if (!input.empty()) {
            for (const parse_diagnostic& d : r.diagnostics) {
                CHECK(d.offset <= input.size());
                CHECK(d.offset + d.length <= input.size());
                if (d.level == severity::error) CHECK(d.length > 0);
            }
        }
    }
}
