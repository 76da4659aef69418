#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metascen {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The six nodes of the open-system graph, in serialization order.
enum class node : std::uint8_t {
    input = 0,
    processes = 1,
    structures = 2,
    output = 3,
    feedback = 4,
    environment = 5,
};

inline constexpr int node_count = 6;

std::string_view node_name(node n);  // "I", "P", "S", "O", "F", "E"

// The two members of the internal cluster.
enum class internal_node : std::uint8_t {
    processes = 0,
    structures = 1,
};

node to_node(internal_node n);

// Internal cluster wiring between P and S.
enum class arrangement : std::uint8_t {
    bottom_up = 0,      // P->S only (monitoring dominates)
    top_down = 1,       // S->P only (control dominates)
    bidirectional = 2,  // both directions
};

inline constexpr int arrangement_count = 3;

std::string_view arrangement_name(arrangement a);
std::optional<arrangement> arrangement_from_name(std::string_view name);

// Nonempty subset of {P,S}. Used for both entry and exit patterns; input must
// enter and output must leave the internal system, so the empty set is not
// representable.
class cluster_set {
public:
    static cluster_set p() { return cluster_set(0b01); }
    static cluster_set s() { return cluster_set(0b10); }
    static cluster_set ps() { return cluster_set(0b11); }

    // Throws metascen::error when both flags are false.
    static cluster_set from_flags(bool has_p, bool has_s);

    // Enumeration order {P}=0, {S}=1, {P,S}=2.
    static cluster_set from_index(int index);
    int index() const;

    bool has(internal_node n) const;
    bool has_p() const { return (bits_ & 0b01) != 0; }
    bool has_s() const { return (bits_ & 0b10) != 0; }
    int size() const { return (has_p() ? 1 : 0) + (has_s() ? 1 : 0); }

    std::vector<internal_node> members() const;

    auto operator<=>(const cluster_set&) const = default;

private:
    explicit cluster_set(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_;
};

inline constexpr int cluster_set_count = 3;

// The three optional external edges that bypass backbone stages.
enum class shortcut : std::uint8_t {
    oe = 0,  // O->E, direct environmental influence
    oi = 1,  // O->I, self-monitoring
    fi = 2,  // F->I, direct feedback incorporation
};

std::string_view shortcut_name(shortcut s);       // "OE", "OI", "FI"
std::pair<node, node> shortcut_edge(shortcut s);  // the actual graph edge

// Any subset of {OE, OI, FI}; empty means the baseline topology.
class shortcut_set {
public:
    shortcut_set() = default;
    shortcut_set(std::initializer_list<shortcut> items);

    bool has(shortcut s) const { return (bits_ & bit(s)) != 0; }
    int size() const;
    bool empty() const { return bits_ == 0; }

    shortcut_set with(shortcut s) const;
    std::vector<shortcut> members() const;  // in OE, OI, FI order

    auto operator<=>(const shortcut_set&) const = default;

private:
    static std::uint8_t bit(shortcut s) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(s)); }
    friend shortcut_set topology_shortcuts(int id);
    std::uint8_t bits_ = 0;
};

// Fixed bijection between shortcut subsets and the topology numbering 1..8:
// 1={}, 2={OE}, 3={OI}, 4={FI}, 5={OE,OI}, 6={OE,FI}, 7={OI,FI}, 8={OE,OI,FI}.
int topology_id(shortcut_set sc);
shortcut_set topology_shortcuts(int id);  // throws metascen::error for id outside 1..8

inline constexpr int topology_count = 8;

// A complete scenario configuration. Identity is the canonical key
// (entry, internal, exit, shortcuts); the label is an annotation only and
// never participates in comparisons.
struct scenario {
    cluster_set entry = cluster_set::p();
    arrangement internal = arrangement::bottom_up;
    cluster_set exit = cluster_set::p();
    shortcut_set shortcuts;
    std::optional<std::string> label;

    // Canonical key, a dense index in [0, 216). Doubles as the position in
    // the deterministic enumeration order (entry, internal, exit, topology).
    int key() const;
    static scenario from_key(int key);
};

inline constexpr int scenario_space_size = 216;

inline bool same_configuration(const scenario& a, const scenario& b) { return a.key() == b.key(); }

// Directed graph over the six fixed nodes. Every scenario graph contains the
// mandatory backbone O->F->E->I.
class scenario_graph {
public:
    void add_edge(node from, node to);
    bool has_edge(node from, node to) const;
    int edge_count() const;

    // Edges sorted by (from, to) node order.
    std::vector<std::pair<node, node>> edges() const;

    // BFS reachability; a node always reaches itself.
    bool reachable(node from, node to) const;

    auto operator<=>(const scenario_graph&) const = default;

private:
    std::uint64_t edges_ = 0;
};

scenario_graph build_graph(const scenario& s);

std::string to_dot(const scenario_graph& g, std::string_view name = "scenario");

// Reflexive-transitive closure over the internal edges only.
cluster_set internal_reach(const scenario& s, internal_node from);

// The nine-attribute boolean encoding shared by filters, FCA and trajectory
// analysis. mon/ctl are stored instead of a 3-valued arrangement so that the
// bidirectional arrangement strictly contains each unidirectional one as an
// attribute set.
class attribute_vector {
public:
    enum index : int {
        entry_p = 0,
        entry_s = 1,
        mon = 2,  // edge P->S present
        ctl = 3,  // edge S->P present
        exit_p = 4,
        exit_s = 5,
        sc_oe = 6,
        sc_oi = 7,
        sc_fi = 8,
    };
    static constexpr int count = 9;

    attribute_vector() = default;
    explicit attribute_vector(std::uint16_t bits) : bits_(bits) {}

    bool test(int attr) const { return (bits_ & (1u << attr)) != 0; }
    std::uint16_t bits() const { return bits_; }

    // Derived attributes; never stored.
    bool parallel_entry() const { return test(entry_p) && test(entry_s); }
    bool dual_exit() const { return test(exit_p) && test(exit_s); }
    bool bidirectional() const { return test(mon) && test(ctl); }

    int hamming(attribute_vector other) const;

    // Names in index order: entry:P entry:S mon ctl exit:P exit:S sc:OE sc:OI sc:FI
    static const std::array<std::string_view, count>& names();
    static std::optional<int> index_of(std::string_view name);

    std::vector<std::string_view> set_names() const;

    auto operator<=>(const attribute_vector&) const = default;

private:
    std::uint16_t bits_ = 0;
};

attribute_vector attributes_of(const scenario& s);

}  // namespace metascen
