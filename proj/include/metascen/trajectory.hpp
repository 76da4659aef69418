#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "metascen/catalog.hpp"
#include "metascen/scenario.hpp"

namespace metascen::trajectory {

class no_path_error : public error {
public:
    using error::error;
};

// Attribute-set difference between two scenarios.
struct delta {
    attribute_vector gained;
    attribute_vector lost;
    bool empty() const { return gained.bits() == 0 && lost.bits() == 0; }
};

delta attribute_delta(const scenario& a, const scenario& b);

// Hamming distance over the nine atomic attributes; coincides with the
// edge-set symmetric difference of the scenario graphs.
int hamming_distance(const scenario& a, const scenario& b);

enum class threshold_kind {
    bidirectionality_barrier,     // mon and ctl first both present
    self_monitoring_threshold,    // sc:OI first present
    external_engagement_ceiling,  // shortcut count first reaches 2
};

std::string_view threshold_name(threshold_kind k);

struct threshold_event {
    threshold_kind kind;
    int step = 0;  // 0-based index into steps; earliest step where the condition holds
};

struct trajectory {
    std::string name;
    std::vector<scenario> steps;
    std::vector<delta> deltas;  // size |steps| - 1
    std::vector<threshold_event> thresholds;
};

// Computes deltas and threshold events. Throws metascen::error on empty steps.
trajectory make_trajectory(std::string name, std::vector<scenario> steps);

struct monotonicity {
    bool monotone = true;
    // (index of the arriving step, attributes lost on that transition)
    std::vector<std::pair<int, attribute_vector>> violations;
};

// A trajectory accumulates when no transition loses attributes.
monotonicity is_monotone(const trajectory& t);

// The documented developmental pathways, resolved against the priority
// catalog: the two mainstream variants (S1-S7-S17 and S1-S7-S24), the
// specialist pathway (S1-S6-S19), the strategic pathway (S3-S13-S24) and the
// mainstream pathway used for the lattice analysis (S1-S6-S7-S14-S17).
std::vector<trajectory> named_trajectories();

struct tier_classification {
    tier value = tier::novice;
    bool exact = false;
    bool conflict = false;  // exact match on a duplicated key with divergent tiers
    int distance = 0;
    std::vector<std::string> nearest;  // catalog labels
    std::string rationale;
};

// Exact match on catalog keys first; otherwise nearest neighbor by Hamming
// distance over the atomic attributes, ties broken toward the lower tier.
tier_classification classify_tier(const scenario& s);

inline constexpr int default_max_hop = 3;

// All minimum-length paths between two scenarios where every hop stays within
// the given Hamming radius. Scenarios in `within` are deduplicated by
// canonical key (labels of merged duplicates are joined with '/'). Throws
// no_path_error when the target is unreachable, metascen::error when either
// endpoint is not in `within`.
std::vector<trajectory> shortest_paths(const scenario& from, const scenario& to,
                                       std::span<const scenario> within,
                                       int max_hop = default_max_hop);

nlohmann::ordered_json delta_to_json(const delta& d);
nlohmann::ordered_json trajectory_to_json(const trajectory& t);
nlohmann::ordered_json classification_to_json(const tier_classification& c);

}  // namespace metascen::trajectory
