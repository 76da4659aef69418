#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "metascen/catalog.hpp"
#include "metascen/scenario.hpp"

namespace metascen::filters {

class config_error : public error {
public:
    using error::error;
};

inline constexpr int stage_count = 4;

enum class rule_action {
    drop_if_true,
    keep_only_if_true,
};

std::string_view action_name(rule_action a);

// Closed predicate vocabulary.
enum class predicate_kind {
    exit_reachable_from_entry,                    // Rule A: no disconnected flow
    process_on_io_path,                           // Rule B: P sits on an I->O path
    integrated_internal_with_baseline_topology,   // stage-2 structural rule
    micro_sequence_representative,                // stage-3 consolidation rule
    in_priority_catalog,                          // stage-4 catalog rule
    custom_attribute_clause,                      // require/forbid over attributes
};

std::string_view predicate_name(predicate_kind k);

enum class rule_b_mode {
    strict,      // P must sit on an I->O path
    named_only,  // only the (entry {S}, top-down, exit {S}) family fails
};

struct predicate_spec {
    predicate_kind kind = predicate_kind::exit_reachable_from_entry;
    rule_b_mode mode = rule_b_mode::strict;   // process_on_io_path only
    std::vector<int> require_attrs;           // custom_attribute_clause only
    std::vector<int> forbid_attrs;
};

struct filter_rule {
    std::string name;
    int stage = 1;
    predicate_spec predicate;
    rule_action action = rule_action::drop_if_true;
};

struct pipeline_config {
    std::string name;
    std::vector<filter_rule> rules;  // stages nondecreasing
    std::array<std::optional<int>, stage_count> reference_targets;

    // Default configuration: Rule A, the stage-2 structural rule, and the
    // catalog-driven stage 4. Its end state equals the distinct priority
    // configurations exactly.
    static pipeline_config shipped();

    // All documented structural rules, including Rule B and the stage-3
    // consolidation rule. Useful for auditing; its end state drops below the
    // priority set (the stricter rules also catch S1, S2 and S5).
    static pipeline_config strict_rules();

    static pipeline_config from_json(const nlohmann::json& j);  // throws config_error
    nlohmann::ordered_json to_json() const;

    // Copy containing only rules with the given name (targets kept).
    pipeline_config only_rule(std::string_view rule_name) const;  // throws config_error

    std::vector<const filter_rule*> rules_for_stage(int stage) const;
};

struct elimination {
    scenario subject;
    std::string rule_name;
};

struct stage_report {
    int stage = 0;
    std::vector<std::string> rule_names;
    int input_count = 0;
    int output_count = 0;
    std::vector<elimination> eliminations;
    std::optional<int> reference_target;
    bool matches_reference_target = false;
    std::string note;  // e.g. when a target counts labels rather than keys
};

struct pipeline_result {
    std::vector<scenario> survivors;
    std::array<stage_report, stage_count> stages;
};

// Filter-1 Rule A: every exit node is internally reachable from some entry
// node.
bool connected_flow(const scenario& s);

// Filter-1 Rule B: P lies on at least one directed I->...->O path using only
// cross-cluster and internal edges.
bool process_on_io_path(const scenario& s);

// Rule B under the named-only reading: just the pure knowledge pathway
// (entry {S}, top-down, exit {S}) fails.
bool process_on_io_path_named_only(const scenario& s);

// Stage-2 rule: true iff internal arrangement is bidirectional and no
// shortcuts are active (baseline topology only). Dropped when true.
bool filter2_integration_without_feedback(const scenario& s);

// Stage-3 rule: true iff s is the designated representative of its
// measurement-equivalence class within `space`. Two scenarios are equivalent
// when one is a single-entry-P bottom-up configuration and the other differs
// only by additionally entering S (identical exit and shortcuts); the
// parallel-entry member represents the class.
bool filter3_representative(const scenario& s, std::span<const scenario> space);

// Stage-4 rule: true iff the canonical key appears in the priority catalog.
bool filter4_priority(const scenario& s);

// Runs the four stages in order. Eliminations carry the first rule that
// fired. Throws config_error when the config has no rules at all.
pipeline_result run_pipeline(const pipeline_config& cfg, std::span<const scenario> space);

nlohmann::ordered_json stage_report_to_json(const stage_report& r);
nlohmann::ordered_json pipeline_result_to_json(const pipeline_config& cfg,
                                               const pipeline_result& result);

}  // namespace metascen::filters
