#include "metascen/trajectory.hpp"

#include <algorithm>
#include <map>

#include "metascen/serialize.hpp"

namespace metascen::trajectory {

namespace {

int shortcut_count(const attribute_vector& v) {
    return (v.test(attribute_vector::sc_oe) ? 1 : 0) + (v.test(attribute_vector::sc_oi) ? 1 : 0) +
           (v.test(attribute_vector::sc_fi) ? 1 : 0);
}

bool threshold_holds(threshold_kind kind, const attribute_vector& v) {
    switch (kind) {
        case threshold_kind::bidirectionality_barrier:
            return v.bidirectional();
        case threshold_kind::self_monitoring_threshold:
            return v.test(attribute_vector::sc_oi);
        case threshold_kind::external_engagement_ceiling:
            return shortcut_count(v) >= 2;
    }
    return false;
}

std::vector<std::string_view> attribute_names_of(const attribute_vector& v) {
    return v.set_names();
}

scenario catalog_scenario(std::string_view label) {
    const catalog_entry* e = appendix2_catalog().find(label);
    if (!e) throw error("no catalog entry labeled '" + std::string(label) + "'");
    return e->config;
}

}  // namespace

delta attribute_delta(const scenario& a, const scenario& b) {
    const std::uint16_t va = attributes_of(a).bits();
    const std::uint16_t vb = attributes_of(b).bits();
    delta d;
    d.gained = attribute_vector(static_cast<std::uint16_t>(vb & ~va));
    d.lost = attribute_vector(static_cast<std::uint16_t>(va & ~vb));
    return d;
}

int hamming_distance(const scenario& a, const scenario& b) {
    return attributes_of(a).hamming(attributes_of(b));
}

std::string_view threshold_name(threshold_kind k) {
    switch (k) {
        case threshold_kind::bidirectionality_barrier: return "bidirectionality-barrier";
        case threshold_kind::self_monitoring_threshold: return "self-monitoring-threshold";
        case threshold_kind::external_engagement_ceiling: return "external-engagement-ceiling";
    }
    return "unknown";
}

trajectory make_trajectory(std::string name, std::vector<scenario> steps) {
    if (steps.empty()) throw error("trajectory needs at least one step");
    trajectory t;
    t.name = std::move(name);
    t.steps = std::move(steps);
    for (std::size_t i = 0; i + 1 < t.steps.size(); ++i) {
        t.deltas.push_back(attribute_delta(t.steps[i], t.steps[i + 1]));
    }
    for (threshold_kind kind :
         {threshold_kind::bidirectionality_barrier, threshold_kind::self_monitoring_threshold,
          threshold_kind::external_engagement_ceiling}) {
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            if (threshold_holds(kind, attributes_of(t.steps[i]))) {
                t.thresholds.push_back({kind, static_cast<int>(i)});
                break;
            }
        }
    }
    return t;
}

monotonicity is_monotone(const trajectory& t) {
    monotonicity out;
    for (std::size_t i = 0; i < t.deltas.size(); ++i) {
        if (t.deltas[i].lost.bits() != 0) {
            out.monotone = false;
            out.violations.emplace_back(static_cast<int>(i) + 1, t.deltas[i].lost);
        }
    }
    return out;
}

std::vector<trajectory> named_trajectories() {
    auto steps = [](std::initializer_list<std::string_view> labels) {
        std::vector<scenario> out;
        for (std::string_view label : labels) out.push_back(catalog_scenario(label));
        return out;
    };
    std::vector<trajectory> out;
    out.push_back(make_trajectory("mainstream-s17", steps({"S1", "S7", "S17"})));
    out.push_back(make_trajectory("mainstream-s24", steps({"S1", "S7", "S24"})));
    out.push_back(make_trajectory("specialist", steps({"S1", "S6", "S19"})));
    out.push_back(make_trajectory("strategic", steps({"S3", "S13", "S24"})));
    out.push_back(make_trajectory("fca-mainstream", steps({"S1", "S6", "S7", "S14", "S17"})));
    return out;
}

tier_classification classify_tier(const scenario& s) {
    const catalog& cat = appendix2_catalog();
    tier_classification out;
    const int key = s.key();

    std::vector<const catalog_entry*> exact;
    for (const catalog_entry& e : cat.entries) {
        if (e.config.key() == key) exact.push_back(&e);
    }
    if (!exact.empty()) {
        out.exact = true;
        out.distance = 0;
        tier lowest = *exact.front()->tier_label;
        bool divergent = false;
        for (const catalog_entry* e : exact) {
            out.nearest.push_back(e->label);
            if (*e->tier_label != lowest) divergent = true;
            lowest = std::min(lowest, *e->tier_label);
        }
        out.value = lowest;
        out.conflict = divergent;
        std::string detail;
        for (const catalog_entry* e : exact) {
            if (!detail.empty()) detail += ", ";
            detail += e->label + std::string(" (") + std::string(tier_name(*e->tier_label)) + ")";
        }
        if (divergent) {
            out.rationale = "exact match with conflicting tiers: " + detail + "; returning " +
                            std::string(tier_name(out.value));
        } else {
            out.rationale = "exact match: " + detail;
        }
        return out;
    }

    int best = attribute_vector::count + 1;
    for (const catalog_entry& e : cat.entries) {
        best = std::min(best, hamming_distance(s, e.config));
    }
    out.distance = best;
    tier lowest = tier::expert_adaptive;
    std::string detail;
    for (const catalog_entry& e : cat.entries) {
        if (hamming_distance(s, e.config) != best) continue;
        out.nearest.push_back(e.label);
        lowest = std::min(lowest, *e.tier_label);
        if (!detail.empty()) detail += ", ";
        detail += e.label + std::string(" (") + std::string(tier_name(*e.tier_label)) + ")";
    }
    out.value = lowest;
    out.rationale = "nearest: " + detail + " at distance " + std::to_string(best) +
                    (out.nearest.size() > 1 ? "; tie broken toward the lower tier" : "");
    return out;
}

std::vector<trajectory> shortest_paths(const scenario& from, const scenario& to,
                                       std::span<const scenario> within, int max_hop) {
    // Deduplicate by canonical key, first occurrence wins; merged labels are
    // joined so paths through a duplicated configuration stay readable.
    std::vector<scenario> nodes;
    std::map<int, std::size_t> index_of_key;
    for (const scenario& s : within) {
        auto [it, inserted] = index_of_key.try_emplace(s.key(), nodes.size());
        if (inserted) {
            nodes.push_back(s);
        } else if (s.label) {
            scenario& kept = nodes[it->second];
            kept.label = kept.label ? *kept.label + "/" + *s.label : *s.label;
        }
    }
    auto find_node = [&](const scenario& s, const char* what) {
        auto it = index_of_key.find(s.key());
        if (it == index_of_key.end()) {
            throw error(std::string(what) + " scenario is not in the search set");
        }
        return it->second;
    };
    const std::size_t source = find_node(from, "from");
    const std::size_t target = find_node(to, "to");

    auto path_name = [&](const std::vector<std::size_t>& path) {
        std::string name;
        for (std::size_t idx : path) {
            if (!name.empty()) name += " -> ";
            const scenario& s = nodes[idx];
            name += s.label ? *s.label : "K" + std::to_string(s.key());
        }
        return name;
    };

    if (source == target) {
        return {make_trajectory(path_name({source}), {nodes[source]})};
    }

    // BFS layering, then depth-first collection of all minimum-length paths.
    const std::size_t n = nodes.size();
    std::vector<int> dist(n, -1);
    dist[source] = 0;
    std::vector<std::size_t> frontier{source};
    while (!frontier.empty() && dist[target] < 0) {
        std::vector<std::size_t> next;
        for (std::size_t u : frontier) {
            for (std::size_t v = 0; v < n; ++v) {
                if (dist[v] >= 0 || hamming_distance(nodes[u], nodes[v]) > max_hop) continue;
                if (u == v) continue;
                dist[v] = dist[u] + 1;
                next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    if (dist[target] < 0) {
        throw no_path_error("no path within hop radius " + std::to_string(max_hop));
    }

    std::vector<trajectory> out;
    std::vector<std::size_t> stack{source};
    auto collect = [&](auto&& self, std::size_t u) -> void {
        if (u == target) {
            std::vector<scenario> steps;
            for (std::size_t idx : stack) steps.push_back(nodes[idx]);
            out.push_back(make_trajectory(path_name(stack), std::move(steps)));
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u || dist[v] != dist[u] + 1) continue;
            if (hamming_distance(nodes[u], nodes[v]) > max_hop) continue;
            stack.push_back(v);
            self(self, v);
            stack.pop_back();
        }
    };
    collect(collect, source);
    return out;
}

nlohmann::ordered_json delta_to_json(const delta& d) {
    nlohmann::ordered_json out;
    nlohmann::ordered_json gained = nlohmann::ordered_json::array();
    for (std::string_view name : attribute_names_of(d.gained)) gained.push_back(name);
    nlohmann::ordered_json lost = nlohmann::ordered_json::array();
    for (std::string_view name : attribute_names_of(d.lost)) lost.push_back(name);
    out["gained"] = gained;
    out["lost"] = lost;
    return out;
}

nlohmann::ordered_json trajectory_to_json(const trajectory& t) {
    nlohmann::ordered_json out;
    out["name"] = t.name;
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const scenario& s : t.steps) steps.push_back(scenario_to_json(s));
    out["steps"] = steps;
    nlohmann::ordered_json deltas = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < t.deltas.size(); ++i) {
        nlohmann::ordered_json d = delta_to_json(t.deltas[i]);
        d["step"] = static_cast<int>(i) + 1;
        deltas.push_back(d);
    }
    out["deltas"] = deltas;
    nlohmann::ordered_json thresholds = nlohmann::ordered_json::array();
    for (const threshold_event& e : t.thresholds) {
        nlohmann::ordered_json item;
        item["event"] = threshold_name(e.kind);
        item["step"] = e.step;
        const scenario& s = t.steps[static_cast<std::size_t>(e.step)];
        if (s.label) item["label"] = *s.label;
        thresholds.push_back(item);
    }
    out["thresholds"] = thresholds;
    const monotonicity mono = is_monotone(t);
    out["monotone"] = mono.monotone;
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (const auto& [step, lost] : mono.violations) {
        nlohmann::ordered_json item;
        item["step"] = step;
        nlohmann::ordered_json names = nlohmann::ordered_json::array();
        for (std::string_view name : attribute_names_of(lost)) names.push_back(name);
        item["lost"] = names;
        violations.push_back(item);
    }
    out["violations"] = violations;
    return out;
}

nlohmann::ordered_json classification_to_json(const tier_classification& c) {
    nlohmann::ordered_json out;
    out["tier"] = tier_name(c.value);
    out["exact"] = c.exact;
    out["conflict"] = c.conflict;
    out["distance"] = c.distance;
    out["nearest"] = c.nearest;
    out["rationale"] = c.rationale;
    return out;
}

}  // namespace metascen::trajectory
