#include <doctest.h>

#include <set>

#include "metascen/catalog.hpp"
#include "metascen/filters.hpp"
#include "metascen/scenario.hpp"
#include "oracles.hpp"

using namespace metascen;

namespace {

scenario make(cluster_set entry, arrangement internal, cluster_set exit, shortcut_set sc) {
    scenario s;
    s.entry = entry;
    s.internal = internal;
    s.exit = exit;
    s.shortcuts = sc;
    return s;
}

}  // namespace

TEST_CASE("cluster sets are never empty") {
    CHECK_THROWS_AS(cluster_set::from_flags(false, false), error);
    CHECK(cluster_set::from_flags(true, false) == cluster_set::p());
    CHECK(cluster_set::from_flags(true, true) == cluster_set::ps());
    CHECK(cluster_set::ps().size() == 2);
}

TEST_CASE("topology numbering is the fixed bijection") {
    CHECK(topology_id({}) == 1);
    CHECK(topology_id({shortcut::oe}) == 2);
    CHECK(topology_id({shortcut::oi}) == 3);
    CHECK(topology_id({shortcut::fi}) == 4);
    CHECK(topology_id({shortcut::oe, shortcut::oi}) == 5);
    CHECK(topology_id({shortcut::oe, shortcut::fi}) == 6);
    CHECK(topology_id({shortcut::oi, shortcut::fi}) == 7);
    CHECK(topology_id({shortcut::oe, shortcut::oi, shortcut::fi}) == 8);
    for (int id = 1; id <= 8; ++id) CHECK(topology_id(topology_shortcuts(id)) == id);
    CHECK_THROWS_AS(topology_shortcuts(0), error);
    CHECK_THROWS_AS(topology_shortcuts(9), error);
}

TEST_CASE("graph construction matches the documented examples") {
    SUBCASE("bottom-up single entry and exit with direct feedback") {
        const scenario s = make(cluster_set::p(), arrangement::bottom_up, cluster_set::p(),
                                {shortcut::fi});
        const scenario_graph g = build_graph(s);
        CHECK(g.edge_count() == 7);
        CHECK(g.has_edge(node::output, node::feedback));
        CHECK(g.has_edge(node::feedback, node::environment));
        CHECK(g.has_edge(node::environment, node::input));
        CHECK(g.has_edge(node::input, node::processes));
        CHECK(g.has_edge(node::processes, node::structures));
        CHECK(g.has_edge(node::processes, node::output));
        CHECK(g.has_edge(node::feedback, node::input));
        CHECK_FALSE(g.has_edge(node::output, node::input));
    }
    SUBCASE("maximally connected configuration has 12 edges") {
        const scenario s = make(cluster_set::ps(), arrangement::bidirectional, cluster_set::ps(),
                                {shortcut::oe, shortcut::oi, shortcut::fi});
        CHECK(build_graph(s).edge_count() == 12);
    }
    SUBCASE("minimal baseline case") {
        const scenario s = make(cluster_set::s(), arrangement::top_down, cluster_set::s(), {});
        const scenario_graph g = build_graph(s);
        CHECK(g.edge_count() == 6);
        CHECK(g.has_edge(node::input, node::structures));
        CHECK(g.has_edge(node::structures, node::processes));
        CHECK(g.has_edge(node::structures, node::output));
    }
}

TEST_CASE("edge count decomposes by construction for the whole space") {
    for (const scenario& s : enumerate_space()) {
        const int internal_edges = s.internal == arrangement::bidirectional ? 2 : 1;
        CHECK(build_graph(s).edge_count() ==
              3 + s.entry.size() + s.exit.size() + internal_edges + s.shortcuts.size());
    }
}

TEST_CASE("backbone keeps I reachable from O in all scenarios") {
    for (const scenario& s : enumerate_space()) {
        const scenario_graph g = build_graph(s);
        CHECK(g.reachable(node::output, node::input));
        if (filters::connected_flow(s)) CHECK(g.reachable(node::input, node::output));
    }
}

TEST_CASE("internal reach agrees with brute-force path enumeration") {
    for (arrangement a : {arrangement::bottom_up, arrangement::top_down,
                          arrangement::bidirectional}) {
        const scenario s = make(cluster_set::p(), a, cluster_set::p(), {});
        for (internal_node from : {internal_node::processes, internal_node::structures}) {
            const cluster_set got = internal_reach(s, from);
            const std::set<internal_node> want = oracles::internal_reach_brute(s, from);
            CHECK(got.has(internal_node::processes) == want.contains(internal_node::processes));
            CHECK(got.has(internal_node::structures) == want.contains(internal_node::structures));
            CHECK(got.has(from));  // reflexive
        }
    }
    SUBCASE("the three pinned cases") {
        const scenario bu = make(cluster_set::p(), arrangement::bottom_up, cluster_set::p(), {});
        CHECK(internal_reach(bu, internal_node::processes) == cluster_set::ps());
        CHECK(internal_reach(bu, internal_node::structures) == cluster_set::s());
        const scenario bi = make(cluster_set::p(), arrangement::bidirectional, cluster_set::p(), {});
        CHECK(internal_reach(bi, internal_node::structures) == cluster_set::ps());
    }
}

TEST_CASE("attribute vectors match the catalog rows") {
    auto attrs_of_label = [](const char* label) {
        return attributes_of(appendix2_catalog().find(label)->config);
    };
    SUBCASE("S1") {
        const attribute_vector v = attrs_of_label("S1");
        CHECK(v.test(attribute_vector::entry_p));
        CHECK_FALSE(v.test(attribute_vector::entry_s));
        CHECK(v.test(attribute_vector::mon));
        CHECK_FALSE(v.test(attribute_vector::ctl));
        CHECK(v.test(attribute_vector::exit_p));
        CHECK_FALSE(v.test(attribute_vector::exit_s));
        CHECK_FALSE(v.test(attribute_vector::sc_oe));
        CHECK_FALSE(v.test(attribute_vector::sc_oi));
        CHECK(v.test(attribute_vector::sc_fi));
    }
    SUBCASE("S24 carries every attribute except exit:P") {
        const attribute_vector v = attrs_of_label("S24");
        CHECK(v.test(attribute_vector::entry_p));
        CHECK(v.test(attribute_vector::entry_s));
        CHECK(v.test(attribute_vector::mon));
        CHECK(v.test(attribute_vector::ctl));
        CHECK_FALSE(v.test(attribute_vector::exit_p));
        CHECK(v.test(attribute_vector::exit_s));
        CHECK(v.test(attribute_vector::sc_oe));
        CHECK(v.test(attribute_vector::sc_oi));
        CHECK(v.test(attribute_vector::sc_fi));
    }
    SUBCASE("S7") {
        const attribute_vector v = attrs_of_label("S7");
        CHECK(v.test(attribute_vector::entry_p));
        CHECK(v.test(attribute_vector::mon));
        CHECK(v.test(attribute_vector::ctl));
        CHECK(v.test(attribute_vector::exit_p));
        CHECK(v.test(attribute_vector::exit_s));
        CHECK(v.test(attribute_vector::sc_oi));
        CHECK_FALSE(v.test(attribute_vector::sc_oe));
        CHECK_FALSE(v.test(attribute_vector::sc_fi));
    }
}

TEST_CASE("attribute encoding is injective over the whole space") {
    std::set<std::uint16_t> seen;
    for (const scenario& s : enumerate_space()) {
        const attribute_vector v = attributes_of(s);
        CHECK((v.test(attribute_vector::entry_p) || v.test(attribute_vector::entry_s)));
        CHECK((v.test(attribute_vector::exit_p) || v.test(attribute_vector::exit_s)));
        CHECK((v.test(attribute_vector::mon) || v.test(attribute_vector::ctl)));
        CHECK(v.bidirectional() == (s.internal == arrangement::bidirectional));
        seen.insert(v.bits());
    }
    CHECK(seen.size() == 216);
}

TEST_CASE("canonical keys round-trip and ignore labels") {
    for (int key = 0; key < scenario_space_size; ++key) {
        CHECK(scenario::from_key(key).key() == key);
    }
    scenario a = scenario::from_key(42);
    scenario b = a;
    b.label = "anything";
    CHECK(same_configuration(a, b));
    CHECK_THROWS_AS(scenario::from_key(216), error);
    CHECK_THROWS_AS(scenario::from_key(-1), error);
}

TEST_CASE("scenario graph DOT output is well formed") {
    const std::string dot = to_dot(build_graph(scenario::from_key(3)), "s1");
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("O -> F") != std::string::npos);
    CHECK(dot.find("F -> I") != std::string::npos);
}
