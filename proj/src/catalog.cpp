#include "metascen/catalog.hpp"

#include <algorithm>
#include <map>

namespace metascen {

namespace {

constexpr std::array<std::string_view, 3> k_tier_names = {"novice", "developing",
                                                          "expert-adaptive"};
constexpr std::array<std::string_view, 3> k_tier_attributes = {"tier:novice", "tier:developing",
                                                               "tier:expert"};

struct row {
    const char* label;
    const char* entry;      // "P", "S" or "PS"
    arrangement internal;
    const char* exit;
    std::initializer_list<shortcut> shortcuts;
    int tier;  // -1 for none
    const char* notation;
    const char* description;
    const char* reference;
};

constexpr arrangement BU = arrangement::bottom_up;
constexpr arrangement TD = arrangement::top_down;
constexpr arrangement BI = arrangement::bidirectional;
constexpr shortcut OE = shortcut::oe;
constexpr shortcut OI = shortcut::oi;
constexpr shortcut FI = shortcut::fi;

// The priority taxonomy, one row per labeled scenario. Notation strings are
// frozen as published, anomalies included: S4 lists the entry set after the
// arrangement, and S5 lists the backbone edge E→I as if it were a shortcut.
const row k_appendix2_rows[] = {
    {"S1", "P", BU, "P", {FI}, 0,
     "I → [P, P→S, P→] O, O→F→E→I + F→I",
     "Foundational experience-based learning", "Koriat (2007)"},
    {"S2", "P", BU, "PS", {FI}, 0,
     "I → [P, P→S, {P,S}→] O, O→F→E→I + F→I",
     "Integration emergence", "Kittel & Seufert (2023)"},
    {"S3", "S", TD, "P", {OI}, 0,
     "I → [S, S→P, P→] O, O→F→E→I + O→I",
     "Knowledge application with self-monitoring", "Schraw & Dennison (1994)"},
    {"S4", "PS", BU, "P", {FI}, 0,
     "I→ [P→S, {P,S},P→] O, O→F→E→I + F→I",
     "Parallel processing initiation", "Winne & Hadwin (1998)"},
    {"S5", "S", TD, "S", {FI}, 0,
     "I→[S, S→P, S→] O, O→F→E→I + E→I + F→I",
     "Rapid declarative response", "Brown (1987)"},
    {"S6", "P", BI, "P", {OI}, 0,
     "I→ [P, P↔S, P→] O, O→F→E→I + O→I",
     "Bidirectional emergence", "Nelson & Narens (1990)"},
    {"S7", "P", BI, "PS", {OI}, 1,
     "I → [P, P⇌S, {P,S}→] O, O→F→E→I + O→I",
     "Core integrated learning (most common pattern)", "Sitzmann & Ely (2011)"},
    {"S8", "PS", BI, "P", {OI, FI}, 1,
     "I → [{P,S}, P⇌S, P→] O, O→F→E→I + F→I + O→I",
     "Enhanced monitoring", "Kittel & Seufert (2023)"},
    {"S9", "S", TD, "PS", {OI}, 1,
     "I → [S, S→P, {P,S}→] O, O→F→E→I + O→I",
     "Goal-driven with monitoring", "Zimmerman & Schunk (2009)"},
    {"S10", "PS", BU, "PS", {OI, FI}, 1,
     "I → [{P,S}, P→S, {P,S}→] O, O→F→E→I + O→I + F→I",
     "Rich information flow", "Tannenbaum & Wolfson (2022)"},
    {"S11", "S", BI, "P", {OI}, 1,
     "I → [S, P⇌S, P→] O, O→F→E→I + O→I",
     "Knowledge activation pathway", "Flavell (1987)"},
    {"S12", "P", BI, "PS", {OI, FI}, 1,
     "I → [P, P⇌S, {P,S}→] O, O→F→E→I + F→I + O→I",
     "Multiple feedback integration", "Rivera et al. (2021)"},
    {"S13", "PS", TD, "P", {OI, FI}, 1,
     "I → [{P,S}, S→P, P→] O, O→F→E→I + O→I + F→I",
     "Specialized developing pattern", "Decius, Decius & Beausaert (2025)"},
    {"S14", "PS", BI, "PS", {OI}, 1,
     "I → [{P,S}, P⇌S, {P,S}→] O, O→F→E→I + O→I",
     "Full internal integration", "Metcalfe & Shimamura (1994)"},
    {"S15", "PS", BU, "PS", {OE, OI, FI}, 1,
     "I → [{P,S}, P→S, {P,S}→] O, O→F→E→I + F→I + O→I + O→E",
     "Maximum connectivity developing", "Marsick & Watkins (2003)"},
    {"S16", "S", TD, "PS", {OE, OI, FI}, 1,
     "I → [S, S→P, {P,S}→] O, O→F→E→I + F→I + O→I + O→E",
     "Top-down with full feedback", "Zimmerman (2000)"},
    {"S17", "PS", BI, "PS", {OI, FI}, 2,
     "I → [{P,S}, P⇌S, {P,S}→] O, O→F→E→I + O→I + F→I",
     "Expert standard pattern", "Dignath & Büttner (2008)"},
    {"S18", "PS", BI, "PS", {OE, OI, FI}, 2,
     "I → [{P,S}, P⇌S, {P,S}→] O, O→F→E→I + O→E + O→I + F→I "
     "(Topology 8)",
     "Maximum integration", "Ericsson & Pool (2016)"},
    {"S19", "PS", BU, "PS", {OE, OI, FI}, 2,
     "I → [{P,S}, P→S, {P,S}→] O, O→F→E→I + O→I + F→I + O→E",
     "Bottom-up expert pattern", "Reber (1989)"},
    {"S20", "PS", TD, "PS", {OI, FI}, 2,
     "I → [{P,S}, S→P, {P,S}→] O, O→F→E→I + O→I + F→I",
     "Top-down expert", "Schön (2017)"},
    {"S21", "S", BI, "PS", {OI, FI}, 2,
     "I → [S, P⇌S, {P,S}→] O, O→F→E→I + O→I + F→I",
     "Knowledge-activated expert", "Chi (2006)"},
    {"S22", "P", BI, "PS", {OE, OI, FI}, 2,
     "I → [P, P⇌S, {P,S}→] O, O→F→E→I + O→E + O→I + F→I "
     "(Topology 8)",
     "Process-initiated expert", "Dreyfus & Dreyfus (2005)"},
    {"S23", "PS", BI, "P", {OE, OI, FI}, 2,
     "I → [{P,S}, P⇌S, P→] O, O→F→E→I + O→I + F→I + O→E",
     "Monitoring-focused expert", "Schraw & Moshman (1995)"},
    {"S24", "PS", BI, "S", {OE, OI, FI}, 2,
     "I → [{P,S}, P⇌S, S→] O, O→F→E→I + O→I + F→I + O→E",
     "Integrated expert, knowledge-driven output", "Hatano & Inagaki (1986)"},
};

const row k_table1_rows[] = {
    {"T1", "P", BU, "P", {FI}, -1,
     "I → [P, P→S, P→] O, O→F→E→I + F→I",
     "Foundational experience-based learning; bottom-up learning with direct feedback", ""},
    {"T2", "P", BI, "PS", {}, -1,
     "I → [P, P⇌S, {P,S}→] O, O→F→E→I",
     "Standard learning cycle with full integration", ""},
    {"T3", "S", TD, "P", {OI}, -1,
     "I → [S, S→P, P→] O, O→F→E→I + O→I",
     "Application of knowledge with self-monitoring", ""},
    {"T4", "PS", BI, "PS", {OI}, -1,
     "I → [{P,S}, P⇌S, {P,S}→] O, O→F→E→I + O→I",
     "Expert performance with full awareness", ""},
    {"T5", "S", TD, "S", {}, -1,
     "I → [S, S→P, S→] O, O→F→E→I",
     "Pure knowledge application (routine tasks)", ""},
};

cluster_set cluster_from(const char* text) {
    const std::string_view v(text);
    return cluster_set::from_flags(v.find('P') != std::string_view::npos,
                                   v.find('S') != std::string_view::npos);
}

catalog build_catalog(std::string name, std::span<const row> rows) {
    catalog c;
    c.name = std::move(name);
    for (const row& r : rows) {
        catalog_entry e;
        e.label = r.label;
        e.notation = r.notation;
        e.config.entry = cluster_from(r.entry);
        e.config.internal = r.internal;
        e.config.exit = cluster_from(r.exit);
        e.config.shortcuts = shortcut_set(r.shortcuts);
        e.config.label = e.label;
        if (r.tier >= 0) e.tier_label = static_cast<tier>(r.tier);
        e.description = r.description;
        e.reference = r.reference;
        c.entries.push_back(std::move(e));
    }
    return c;
}

}  // namespace

std::string_view tier_name(tier t) { return k_tier_names.at(static_cast<std::size_t>(t)); }

std::optional<tier> tier_from_name(std::string_view name) {
    for (std::size_t i = 0; i < k_tier_names.size(); ++i) {
        if (k_tier_names[i] == name) return static_cast<tier>(i);
    }
    return std::nullopt;
}

std::string_view tier_attribute_name(tier t) {
    return k_tier_attributes.at(static_cast<std::size_t>(t));
}

const catalog_entry* catalog::find(std::string_view label) const {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const catalog_entry& e) { return e.label == label; });
    return it == entries.end() ? nullptr : &*it;
}

std::vector<scenario> catalog::scenarios() const {
    std::vector<scenario> out;
    out.reserve(entries.size());
    for (const catalog_entry& e : entries) out.push_back(e.config);
    return out;
}

std::vector<int> catalog::distinct_keys() const {
    std::vector<int> out;
    for (const catalog_entry& e : entries) {
        const int k = e.config.key();
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
}

std::vector<scenario> enumerate_space() {
    std::vector<scenario> out;
    out.reserve(scenario_space_size);
    for (int key = 0; key < scenario_space_size; ++key) out.push_back(scenario::from_key(key));
    return out;
}

const catalog& appendix2_catalog() {
    static const catalog c = build_catalog("appendix2", k_appendix2_rows);
    return c;
}

const catalog& table1_catalog() {
    static const catalog c = build_catalog("table1", k_table1_rows);
    return c;
}

std::vector<std::vector<std::string>> find_duplicates(const catalog& c) {
    std::map<int, std::vector<std::string>> by_key;
    std::vector<int> order;
    for (const catalog_entry& e : c.entries) {
        const int k = e.config.key();
        if (by_key[k].empty()) order.push_back(k);
        by_key[k].push_back(e.label);
    }
    std::vector<std::vector<std::string>> out;
    for (int k : order) {
        if (by_key[k].size() >= 2) out.push_back(by_key[k]);
    }
    return out;
}

}  // namespace metascen
