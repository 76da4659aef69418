#include "metascen/serialize.hpp"

namespace metascen {

namespace {

ordered_json cluster_to_json(cluster_set c) {
    ordered_json out = ordered_json::array();
    if (c.has_p()) out.push_back("P");
    if (c.has_s()) out.push_back("S");
    return out;
}

cluster_set cluster_from_json(const nlohmann::json& j) {
    bool has_p = false;
    bool has_s = false;
    for (const auto& item : j) {
        const std::string v = item.get<std::string>();
        if (v == "P") {
            has_p = true;
        } else if (v == "S") {
            has_s = true;
        } else {
            throw error("unknown internal node '" + v + "'");
        }
    }
    return cluster_set::from_flags(has_p, has_s);
}

}  // namespace

ordered_json scenario_to_json(const scenario& s) {
    ordered_json out;
    if (s.label) out["label"] = *s.label;
    out["entry"] = cluster_to_json(s.entry);
    out["internal"] = arrangement_name(s.internal);
    out["exit"] = cluster_to_json(s.exit);
    ordered_json sc = ordered_json::array();
    for (shortcut item : s.shortcuts.members()) sc.push_back(shortcut_name(item));
    out["shortcuts"] = sc;
    out["topology"] = topology_id(s.shortcuts);
    out["key"] = s.key();
    return out;
}

scenario scenario_from_json(const nlohmann::json& j) {
    scenario s;
    if (j.contains("label") && !j["label"].is_null()) s.label = j["label"].get<std::string>();
    s.entry = cluster_from_json(j.at("entry"));
    const std::string arr = j.at("internal").get<std::string>();
    auto a = arrangement_from_name(arr);
    if (!a) throw error("unknown internal arrangement '" + arr + "'");
    s.internal = *a;
    s.exit = cluster_from_json(j.at("exit"));
    shortcut_set sc;
    for (const auto& item : j.at("shortcuts")) {
        const std::string v = item.get<std::string>();
        if (v == "OE") {
            sc = sc.with(shortcut::oe);
        } else if (v == "OI") {
            sc = sc.with(shortcut::oi);
        } else if (v == "FI") {
            sc = sc.with(shortcut::fi);
        } else {
            throw error("unknown shortcut '" + v + "'");
        }
    }
    s.shortcuts = sc;
    return s;
}

ordered_json catalog_entry_to_json(const catalog_entry& e) {
    ordered_json out;
    out["label"] = e.label;
    out["notation"] = e.notation;
    out["entry"] = cluster_to_json(e.config.entry);
    out["internal"] = arrangement_name(e.config.internal);
    out["exit"] = cluster_to_json(e.config.exit);
    ordered_json sc = ordered_json::array();
    for (shortcut item : e.config.shortcuts.members()) sc.push_back(shortcut_name(item));
    out["shortcuts"] = sc;
    if (e.tier_label) out["tier"] = tier_name(*e.tier_label);
    out["description"] = e.description;
    out["reference"] = e.reference;
    return out;
}

ordered_json catalog_to_json(const catalog& c) {
    ordered_json rows = ordered_json::array();
    for (const catalog_entry& e : c.entries) rows.push_back(catalog_entry_to_json(e));
    return rows;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace metascen
