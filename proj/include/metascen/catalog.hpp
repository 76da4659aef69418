#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metascen/scenario.hpp"

namespace metascen {

// Developmental bands of the priority taxonomy.
enum class tier : std::uint8_t {
    novice = 0,
    developing = 1,
    expert_adaptive = 2,
};

std::string_view tier_name(tier t);  // "novice", "developing", "expert-adaptive"
std::optional<tier> tier_from_name(std::string_view name);
std::string_view tier_attribute_name(tier t);  // "tier:novice", "tier:developing", "tier:expert"

struct catalog_entry {
    std::string label;
    std::string notation;  // frozen source notation; parses to `config`
    scenario config;       // config.label mirrors `label`
    std::optional<tier> tier_label;
    std::string description;
    std::string reference;
};

// An ordered, labeled collection of scenarios. Labels are unique within a
// catalog; configurations need not be (duplicate configurations are data).
struct catalog {
    std::string name;
    std::vector<catalog_entry> entries;

    const catalog_entry* find(std::string_view label) const;
    std::vector<scenario> scenarios() const;

    // Distinct canonical keys in order of first appearance.
    std::vector<int> distinct_keys() const;
};

// The full 216-scenario space in deterministic order: entry, internal
// arrangement, exit, topology id, each in fixed enumeration order. Equal to
// ascending canonical key.
std::vector<scenario> enumerate_space();

// The embedded 24-scenario priority catalog (labels S1..S24, three tiers).
const catalog& appendix2_catalog();

// The embedded 5-scenario catalog of configurations common in the
// metacognitive literature (labels T1..T5, no tiers).
const catalog& table1_catalog();

// Groups of labels (size >= 2) whose entries share one canonical key.
std::vector<std::vector<std::string>> find_duplicates(const catalog& c);

}  // namespace metascen
