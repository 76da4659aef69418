#include "metascen/scenario.hpp"

#include <bit>
#include <sstream>

namespace metascen {

namespace {

constexpr std::array<std::string_view, node_count> k_node_names = {"I", "P", "S", "O", "F", "E"};

constexpr std::array<std::string_view, arrangement_count> k_arrangement_names = {
    "bottom-up", "top-down", "bidirectional"};

constexpr std::array<std::string_view, attribute_vector::count> k_attribute_names = {
    "entry:P", "entry:S", "mon", "ctl", "exit:P", "exit:S", "sc:OE", "sc:OI", "sc:FI"};

int node_index(node n) { return static_cast<int>(n); }

}  // namespace

std::string_view node_name(node n) { return k_node_names.at(node_index(n)); }

node to_node(internal_node n) {
    return n == internal_node::processes ? node::processes : node::structures;
}

std::string_view arrangement_name(arrangement a) {
    return k_arrangement_names.at(static_cast<int>(a));
}

std::optional<arrangement> arrangement_from_name(std::string_view name) {
    for (int i = 0; i < arrangement_count; ++i) {
        if (k_arrangement_names[i] == name) return static_cast<arrangement>(i);
    }
    return std::nullopt;
}

cluster_set cluster_set::from_flags(bool has_p, bool has_s) {
    if (!has_p && !has_s) throw error("cluster set must be nonempty");
    return cluster_set(static_cast<std::uint8_t>((has_p ? 0b01 : 0) | (has_s ? 0b10 : 0)));
}

cluster_set cluster_set::from_index(int index) {
    switch (index) {
        case 0: return p();
        case 1: return s();
        case 2: return ps();
        default: throw error("cluster set index out of range");
    }
}

int cluster_set::index() const {
    if (bits_ == 0b01) return 0;
    if (bits_ == 0b10) return 1;
    return 2;
}

bool cluster_set::has(internal_node n) const {
    return n == internal_node::processes ? has_p() : has_s();
}

std::vector<internal_node> cluster_set::members() const {
    std::vector<internal_node> out;
    if (has_p()) out.push_back(internal_node::processes);
    if (has_s()) out.push_back(internal_node::structures);
    return out;
}

std::string_view shortcut_name(shortcut s) {
    switch (s) {
        case shortcut::oe: return "OE";
        case shortcut::oi: return "OI";
        default: return "FI";
    }
}

std::pair<node, node> shortcut_edge(shortcut s) {
    switch (s) {
        case shortcut::oe: return {node::output, node::environment};
        case shortcut::oi: return {node::output, node::input};
        default: return {node::feedback, node::input};
    }
}

shortcut_set::shortcut_set(std::initializer_list<shortcut> items) {
    for (shortcut s : items) bits_ |= bit(s);
}

int shortcut_set::size() const { return std::popcount(static_cast<unsigned>(bits_)); }

shortcut_set shortcut_set::with(shortcut s) const {
    shortcut_set out = *this;
    out.bits_ |= bit(s);
    return out;
}

std::vector<shortcut> shortcut_set::members() const {
    std::vector<shortcut> out;
    for (shortcut s : {shortcut::oe, shortcut::oi, shortcut::fi}) {
        if (has(s)) out.push_back(s);
    }
    return out;
}

// Topology ids are not a plain binary reading of the bitmask: ids 2..4 are the
// singletons in OE, OI, FI order and 5..7 are the pairs {OE,OI}, {OE,FI},
// {OI,FI}.
namespace {
constexpr std::array<std::uint8_t, topology_count> k_topology_bits = {
    0b000,  // 1: {}
    0b001,  // 2: {OE}
    0b010,  // 3: {OI}
    0b100,  // 4: {FI}
    0b011,  // 5: {OE,OI}
    0b101,  // 6: {OE,FI}
    0b110,  // 7: {OI,FI}
    0b111,  // 8: {OE,OI,FI}
};
}  // namespace

int topology_id(shortcut_set sc) {
    for (int id = 1; id <= topology_count; ++id) {
        if (topology_shortcuts(id) == sc) return id;
    }
    throw error("unreachable: shortcut set has no topology id");
}

shortcut_set topology_shortcuts(int id) {
    if (id < 1 || id > topology_count) {
        throw error("topology id out of range 1..8: " + std::to_string(id));
    }
    shortcut_set out;
    out.bits_ = k_topology_bits[static_cast<std::size_t>(id - 1)];
    return out;
}

int scenario::key() const {
    int k = entry.index();
    k = k * arrangement_count + static_cast<int>(internal);
    k = k * cluster_set_count + exit.index();
    k = k * topology_count + (topology_id(shortcuts) - 1);
    return k;
}

scenario scenario::from_key(int key) {
    if (key < 0 || key >= scenario_space_size) throw error("scenario key out of range");
    const int topo = key % topology_count + 1;
    key /= topology_count;
    const int exit_idx = key % cluster_set_count;
    key /= cluster_set_count;
    const int internal_idx = key % arrangement_count;
    key /= arrangement_count;
    scenario s;
    s.entry = cluster_set::from_index(key);
    s.internal = static_cast<arrangement>(internal_idx);
    s.exit = cluster_set::from_index(exit_idx);
    s.shortcuts = topology_shortcuts(topo);
    return s;
}

void scenario_graph::add_edge(node from, node to) {
    edges_ |= std::uint64_t{1} << (static_cast<int>(from) * node_count + static_cast<int>(to));
}

bool scenario_graph::has_edge(node from, node to) const {
    return (edges_ >> (static_cast<int>(from) * node_count + static_cast<int>(to))) & 1u;
}

int scenario_graph::edge_count() const { return std::popcount(edges_); }

std::vector<std::pair<node, node>> scenario_graph::edges() const {
    std::vector<std::pair<node, node>> out;
    for (int from = 0; from < node_count; ++from) {
        for (int to = 0; to < node_count; ++to) {
            if (has_edge(static_cast<node>(from), static_cast<node>(to))) {
                out.emplace_back(static_cast<node>(from), static_cast<node>(to));
            }
        }
    }
    return out;
}

bool scenario_graph::reachable(node from, node to) const {
    if (from == to) return true;
    std::array<bool, node_count> seen{};
    std::vector<node> frontier{from};
    seen[static_cast<int>(from)] = true;
    while (!frontier.empty()) {
        node cur = frontier.back();
        frontier.pop_back();
        for (int next = 0; next < node_count; ++next) {
            if (!has_edge(cur, static_cast<node>(next)) || seen[next]) continue;
            if (static_cast<node>(next) == to) return true;
            seen[next] = true;
            frontier.push_back(static_cast<node>(next));
        }
    }
    return false;
}

scenario_graph build_graph(const scenario& s) {
    scenario_graph g;
    g.add_edge(node::output, node::feedback);
    g.add_edge(node::feedback, node::environment);
    g.add_edge(node::environment, node::input);
    for (internal_node n : s.entry.members()) g.add_edge(node::input, to_node(n));
    for (internal_node n : s.exit.members()) g.add_edge(to_node(n), node::output);
    if (s.internal != arrangement::top_down) g.add_edge(node::processes, node::structures);
    if (s.internal != arrangement::bottom_up) g.add_edge(node::structures, node::processes);
    for (shortcut sc : s.shortcuts.members()) {
        auto [from, to] = shortcut_edge(sc);
        g.add_edge(from, to);
    }
    return g;
}

std::string to_dot(const scenario_graph& g, std::string_view name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    out << "  rankdir=LR;\n";
    for (int i = 0; i < node_count; ++i) {
        out << "  " << k_node_names[static_cast<std::size_t>(i)] << ";\n";
    }
    for (auto [from, to] : g.edges()) {
        out << "  " << node_name(from) << " -> " << node_name(to) << ";\n";
    }
    out << "}\n";
    return out.str();
}

cluster_set internal_reach(const scenario& s, internal_node from) {
    const bool p_to_s = s.internal != arrangement::top_down;
    const bool s_to_p = s.internal != arrangement::bottom_up;
    bool has_p = from == internal_node::processes;
    bool has_s = from == internal_node::structures;
    // Two nodes; one propagation step saturates the closure.
    if (has_p && p_to_s) has_s = true;
    if (has_s && s_to_p) has_p = true;
    return cluster_set::from_flags(has_p, has_s);
}

int attribute_vector::hamming(attribute_vector other) const {
    return std::popcount(static_cast<unsigned>(bits_ ^ other.bits_));
}

const std::array<std::string_view, attribute_vector::count>& attribute_vector::names() {
    return k_attribute_names;
}

std::optional<int> attribute_vector::index_of(std::string_view name) {
    for (int i = 0; i < count; ++i) {
        if (k_attribute_names[static_cast<std::size_t>(i)] == name) return i;
    }
    return std::nullopt;
}

std::vector<std::string_view> attribute_vector::set_names() const {
    std::vector<std::string_view> out;
    for (int i = 0; i < count; ++i) {
        if (test(i)) out.push_back(k_attribute_names[static_cast<std::size_t>(i)]);
    }
    return out;
}

attribute_vector attributes_of(const scenario& s) {
    std::uint16_t bits = 0;
    auto set = [&bits](int attr, bool value) {
        if (value) bits |= static_cast<std::uint16_t>(1u << attr);
    };
    set(attribute_vector::entry_p, s.entry.has_p());
    set(attribute_vector::entry_s, s.entry.has_s());
    set(attribute_vector::mon, s.internal != arrangement::top_down);
    set(attribute_vector::ctl, s.internal != arrangement::bottom_up);
    set(attribute_vector::exit_p, s.exit.has_p());
    set(attribute_vector::exit_s, s.exit.has_s());
    set(attribute_vector::sc_oe, s.shortcuts.has(shortcut::oe));
    set(attribute_vector::sc_oi, s.shortcuts.has(shortcut::oi));
    set(attribute_vector::sc_fi, s.shortcuts.has(shortcut::fi));
    return attribute_vector(bits);
}

}  // namespace metascen
