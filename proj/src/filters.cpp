#include "metascen/filters.hpp"

#include <algorithm>
#include <set>

#include "metascen/serialize.hpp"

namespace metascen::filters {

namespace {

const std::set<int>& priority_keys() {
    static const std::set<int> keys = [] {
        std::set<int> out;
        for (const catalog_entry& e : appendix2_catalog().entries) out.insert(e.config.key());
        return out;
    }();
    return keys;
}

std::optional<predicate_kind> predicate_from_name(std::string_view name) {
    for (predicate_kind k :
         {predicate_kind::exit_reachable_from_entry, predicate_kind::process_on_io_path,
          predicate_kind::integrated_internal_with_baseline_topology,
          predicate_kind::micro_sequence_representative, predicate_kind::in_priority_catalog,
          predicate_kind::custom_attribute_clause}) {
        if (predicate_name(k) == name) return k;
    }
    return std::nullopt;
}

bool evaluate(const predicate_spec& p, const scenario& s, std::span<const scenario> space) {
    switch (p.kind) {
        case predicate_kind::exit_reachable_from_entry:
            return connected_flow(s);
        case predicate_kind::process_on_io_path:
            return p.mode == rule_b_mode::strict ? process_on_io_path(s)
                                                 : process_on_io_path_named_only(s);
        case predicate_kind::integrated_internal_with_baseline_topology:
            return filter2_integration_without_feedback(s);
        case predicate_kind::micro_sequence_representative:
            return filter3_representative(s, space);
        case predicate_kind::in_priority_catalog:
            return filter4_priority(s);
        case predicate_kind::custom_attribute_clause: {
            const attribute_vector v = attributes_of(s);
            for (int a : p.require_attrs) {
                if (!v.test(a)) return false;
            }
            for (int a : p.forbid_attrs) {
                if (v.test(a)) return false;
            }
            return true;
        }
    }
    return false;
}

bool eliminates(const filter_rule& rule, const scenario& s, std::span<const scenario> space) {
    const bool value = evaluate(rule.predicate, s, space);
    return rule.action == rule_action::drop_if_true ? value : !value;
}

std::vector<int> attr_indices(const nlohmann::json& names) {
    std::vector<int> out;
    for (const auto& item : names) {
        const std::string name = item.get<std::string>();
        auto idx = attribute_vector::index_of(name);
        if (!idx) throw config_error("unknown attribute '" + name + "'");
        out.push_back(*idx);
    }
    return out;
}

}  // namespace

std::string_view action_name(rule_action a) {
    return a == rule_action::drop_if_true ? "drop-if-true" : "keep-only-if-true";
}

std::string_view predicate_name(predicate_kind k) {
    switch (k) {
        case predicate_kind::exit_reachable_from_entry: return "exit-reachable-from-entry";
        case predicate_kind::process_on_io_path: return "process-on-io-path";
        case predicate_kind::integrated_internal_with_baseline_topology:
            return "integrated-internal-with-baseline-topology";
        case predicate_kind::micro_sequence_representative:
            return "micro-sequence-representative";
        case predicate_kind::in_priority_catalog: return "in-priority-catalog";
        case predicate_kind::custom_attribute_clause: return "custom-attribute-clause";
    }
    return "unknown";
}

bool connected_flow(const scenario& s) {
    for (internal_node exit_node : s.exit.members()) {
        bool reached = false;
        for (internal_node entry_node : s.entry.members()) {
            if (internal_reach(s, entry_node).has(exit_node)) {
                reached = true;
                break;
            }
        }
        if (!reached) return false;
    }
    return true;
}

bool process_on_io_path(const scenario& s) {
    // Restricted to entry, internal and exit edges, the only simple I->O
    // paths that visit P are I->P->O, I->P->S->O and I->S->P->O.
    const bool mon = s.internal != arrangement::top_down;
    const bool ctl = s.internal != arrangement::bottom_up;
    return (s.entry.has_p() && s.exit.has_p()) ||
           (s.entry.has_p() && mon && s.exit.has_s()) ||
           (s.entry.has_s() && ctl && s.exit.has_p());
}

bool process_on_io_path_named_only(const scenario& s) {
    return !(s.entry == cluster_set::s() && s.internal == arrangement::top_down &&
             s.exit == cluster_set::s());
}

bool filter2_integration_without_feedback(const scenario& s) {
    return s.internal == arrangement::bidirectional && s.shortcuts.empty();
}

bool filter3_representative(const scenario& s, std::span<const scenario> space) {
    const attribute_vector v = attributes_of(s);
    const bool single_entry_p = v.test(attribute_vector::entry_p) && !v.test(attribute_vector::entry_s);
    const bool monitoring_only = v.test(attribute_vector::mon) && !v.test(attribute_vector::ctl);
    if (!single_entry_p || !monitoring_only) return true;
    // The parallel-entry variant is measurement-indistinguishable and is the
    // designated representative; defer to it whenever it is present.
    scenario partner = s;
    partner.entry = cluster_set::ps();
    const int partner_key = partner.key();
    return std::none_of(space.begin(), space.end(),
                        [&](const scenario& o) { return o.key() == partner_key; });
}

bool filter4_priority(const scenario& s) { return priority_keys().contains(s.key()); }

pipeline_config pipeline_config::shipped() {
    pipeline_config cfg;
    cfg.name = "shipped";
    cfg.rules = {
        {"connected-flow", 1, {predicate_kind::exit_reachable_from_entry}, rule_action::keep_only_if_true},
        {"integration-without-feedback", 2,
         {predicate_kind::integrated_internal_with_baseline_topology}, rule_action::drop_if_true},
        {"priority-catalog", 4, {predicate_kind::in_priority_catalog}, rule_action::keep_only_if_true},
    };
    cfg.reference_targets = {178, 141, 80, 24};
    return cfg;
}

pipeline_config pipeline_config::strict_rules() {
    pipeline_config cfg;
    cfg.name = "strict-rules";
    cfg.rules = {
        {"connected-flow", 1, {predicate_kind::exit_reachable_from_entry}, rule_action::keep_only_if_true},
        {"process-on-io-path", 1, {predicate_kind::process_on_io_path}, rule_action::keep_only_if_true},
        {"integration-without-feedback", 2,
         {predicate_kind::integrated_internal_with_baseline_topology}, rule_action::drop_if_true},
        {"micro-sequence-representative", 3, {predicate_kind::micro_sequence_representative},
         rule_action::keep_only_if_true},
        {"priority-catalog", 4, {predicate_kind::in_priority_catalog}, rule_action::keep_only_if_true},
    };
    cfg.reference_targets = {178, 141, 80, 24};
    return cfg;
}

pipeline_config pipeline_config::from_json(const nlohmann::json& j) {
    pipeline_config cfg;
    try {
        cfg.name = j.value("name", "custom");
        if (!j.contains("stages") || !j["stages"].is_array()) {
            throw config_error("pipeline config needs a 'stages' array");
        }
        int last_stage = 0;
        for (const auto& stage_obj : j["stages"]) {
            const int stage = stage_obj.at("stage").get<int>();
            if (stage < 1 || stage > stage_count) {
                throw config_error("stage must be between 1 and 4");
            }
            if (stage < last_stage) throw config_error("stages must appear in nondecreasing order");
            last_stage = stage;
            if (stage_obj.contains("reference_target") && !stage_obj["reference_target"].is_null()) {
                cfg.reference_targets[static_cast<std::size_t>(stage - 1)] =
                    stage_obj["reference_target"].get<int>();
            }
            for (const auto& rule_obj : stage_obj.value("rules", nlohmann::json::array())) {
                filter_rule rule;
                rule.stage = stage;
                rule.name = rule_obj.at("name").get<std::string>();
                const std::string pred = rule_obj.at("predicate").get<std::string>();
                auto kind = predicate_from_name(pred);
                if (!kind) throw config_error("unknown predicate '" + pred + "'");
                rule.predicate.kind = *kind;
                if (rule_obj.contains("mode")) {
                    const std::string mode = rule_obj["mode"].get<std::string>();
                    if (mode == "strict") {
                        rule.predicate.mode = rule_b_mode::strict;
                    } else if (mode == "named-only") {
                        rule.predicate.mode = rule_b_mode::named_only;
                    } else {
                        throw config_error("unknown rule mode '" + mode + "'");
                    }
                }
                if (rule_obj.contains("require")) {
                    rule.predicate.require_attrs = attr_indices(rule_obj["require"]);
                }
                if (rule_obj.contains("forbid")) {
                    rule.predicate.forbid_attrs = attr_indices(rule_obj["forbid"]);
                }
                const std::string act = rule_obj.value("action", "drop-if-true");
                if (act == "drop-if-true") {
                    rule.action = rule_action::drop_if_true;
                } else if (act == "keep-only-if-true") {
                    rule.action = rule_action::keep_only_if_true;
                } else {
                    throw config_error("unknown action '" + act + "'");
                }
                cfg.rules.push_back(std::move(rule));
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw config_error(std::string("malformed pipeline config: ") + ex.what());
    }
    return cfg;
}

nlohmann::ordered_json pipeline_config::to_json() const {
    nlohmann::ordered_json out;
    out["name"] = name;
    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (int stage = 1; stage <= stage_count; ++stage) {
        nlohmann::ordered_json stage_obj;
        stage_obj["stage"] = stage;
        if (auto target = reference_targets[static_cast<std::size_t>(stage - 1)]) {
            stage_obj["reference_target"] = *target;
        }
        nlohmann::ordered_json rules = nlohmann::ordered_json::array();
        for (const filter_rule* rule : rules_for_stage(stage)) {
            nlohmann::ordered_json r;
            r["name"] = rule->name;
            r["predicate"] = predicate_name(rule->predicate.kind);
            if (rule->predicate.kind == predicate_kind::process_on_io_path) {
                r["mode"] = rule->predicate.mode == rule_b_mode::strict ? "strict" : "named-only";
            }
            if (!rule->predicate.require_attrs.empty()) {
                nlohmann::ordered_json req = nlohmann::ordered_json::array();
                for (int a : rule->predicate.require_attrs) req.push_back(attribute_vector::names()[static_cast<std::size_t>(a)]);
                r["require"] = req;
            }
            if (!rule->predicate.forbid_attrs.empty()) {
                nlohmann::ordered_json forb = nlohmann::ordered_json::array();
                for (int a : rule->predicate.forbid_attrs) forb.push_back(attribute_vector::names()[static_cast<std::size_t>(a)]);
                r["forbid"] = forb;
            }
            r["action"] = action_name(rule->action);
            rules.push_back(r);
        }
        stage_obj["rules"] = rules;
        stages.push_back(stage_obj);
    }
    out["stages"] = stages;
    return out;
}

pipeline_config pipeline_config::only_rule(std::string_view rule_name) const {
    pipeline_config out;
    out.name = name + std::string(":only:") + std::string(rule_name);
    out.reference_targets = reference_targets;
    for (const filter_rule& rule : rules) {
        if (rule.name == rule_name) out.rules.push_back(rule);
    }
    if (out.rules.empty()) {
        throw config_error("no rule named '" + std::string(rule_name) + "' in config");
    }
    return out;
}

std::vector<const filter_rule*> pipeline_config::rules_for_stage(int stage) const {
    std::vector<const filter_rule*> out;
    for (const filter_rule& rule : rules) {
        if (rule.stage == stage) out.push_back(&rule);
    }
    return out;
}

pipeline_result run_pipeline(const pipeline_config& cfg, std::span<const scenario> space) {
    if (cfg.rules.empty()) throw config_error("pipeline config has no rules");
    pipeline_result result;
    std::vector<scenario> current(space.begin(), space.end());
    for (int stage = 1; stage <= stage_count; ++stage) {
        stage_report report;
        report.stage = stage;
        report.input_count = static_cast<int>(current.size());
        report.reference_target = cfg.reference_targets[static_cast<std::size_t>(stage - 1)];
        const std::vector<const filter_rule*> rules = cfg.rules_for_stage(stage);
        for (const filter_rule* rule : rules) report.rule_names.push_back(rule->name);
        std::vector<scenario> next;
        const std::span<const scenario> stage_space(current);
        for (const scenario& s : current) {
            const filter_rule* fired = nullptr;
            for (const filter_rule* rule : rules) {
                if (eliminates(*rule, s, stage_space)) {
                    fired = rule;
                    break;
                }
            }
            if (fired) {
                report.eliminations.push_back({s, fired->name});
            } else {
                next.push_back(s);
            }
        }
        report.output_count = static_cast<int>(next.size());
        report.matches_reference_target =
            report.reference_target.has_value() && *report.reference_target == report.output_count;
        if (stage == stage_count && report.reference_target.has_value() &&
            !report.matches_reference_target) {
            // The stage-4 target counts catalog labels; duplicate
            // configurations make the key count smaller.
            std::size_t label_count = 0;
            std::set<int> keys;
            for (const scenario& s : next) keys.insert(s.key());
            for (const catalog_entry& e : appendix2_catalog().entries) {
                if (keys.contains(e.config.key())) ++label_count;
            }
            if (static_cast<int>(label_count) == *report.reference_target) {
                report.note = "target counts catalog labels: " + std::to_string(label_count) +
                              " labels name " + std::to_string(next.size()) + " distinct keys";
            }
        }
        result.stages[static_cast<std::size_t>(stage - 1)] = std::move(report);
        current = std::move(next);
    }
    result.survivors = std::move(current);
    return result;
}

nlohmann::ordered_json stage_report_to_json(const stage_report& r) {
    nlohmann::ordered_json out;
    out["stage"] = r.stage;
    out["rules"] = r.rule_names;
    out["input_count"] = r.input_count;
    out["output_count"] = r.output_count;
    out["eliminated_count"] = static_cast<int>(r.eliminations.size());
    if (r.reference_target) {
        out["reference_target"] = *r.reference_target;
    } else {
        out["reference_target"] = nullptr;
    }
    out["matches_reference_target"] = r.matches_reference_target;
    if (!r.note.empty()) out["note"] = r.note;
    nlohmann::ordered_json elims = nlohmann::ordered_json::array();
    for (const elimination& e : r.eliminations) {
        nlohmann::ordered_json item;
        item["rule"] = e.rule_name;
        item["scenario"] = scenario_to_json(e.subject);
        elims.push_back(item);
    }
    out["eliminations"] = elims;
    return out;
}

nlohmann::ordered_json pipeline_result_to_json(const pipeline_config& cfg,
                                               const pipeline_result& result) {
    nlohmann::ordered_json out;
    out["config"] = cfg.name;
    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (const stage_report& r : result.stages) stages.push_back(stage_report_to_json(r));
    out["stages"] = stages;
    out["final_count"] = static_cast<int>(result.survivors.size());
    nlohmann::ordered_json survivors = nlohmann::ordered_json::array();
    for (const scenario& s : result.survivors) survivors.push_back(scenario_to_json(s));
    out["final"] = survivors;
    return out;
}

}  // namespace metascen::filters
