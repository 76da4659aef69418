#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metascen/scenario.hpp"

namespace metascen::notation {

enum class notation_style {
    bracketed,       // I -> [P, P->S, P ->] O, O->F->E->I + F->I
    flat,            // I->P, P->S, P->O, O->F->E->I + F->I
    topology_short,  // I->P, P->S, P->O, Topology 4
};

std::string_view style_name(notation_style s);
std::optional<notation_style> style_from_name(std::string_view name);

enum class severity { error, warning };

enum class diagnostic_code {
    empty_entry,
    empty_exit,
    unknown_token,
    missing_backbone,
    conflicting_arrangement,
    missing_arrangement,
    topology_out_of_range,
    redundant_backbone_shortcut,
    unknown_annotation,
    topology_mismatch,
    broken_link,
    assumed_baseline_topology,
    too_many_errors,
};

std::string_view diagnostic_code_name(diagnostic_code c);

struct parse_diagnostic {
    std::size_t offset = 0;  // byte offset into the original input
    std::size_t length = 0;
    severity level = severity::error;
    diagnostic_code code = diagnostic_code::unknown_token;
    std::string message;
};

struct parse_result {
    std::optional<scenario> value;
    std::vector<parse_diagnostic> diagnostics;
    // False when a broken-link operator appears; such text describes a
    // disrupted configuration outside the 216-scenario space.
    bool canonical = true;

    bool ok() const { return value.has_value(); }
    bool has_warnings() const;
};

// Parses any of the three notation styles. Accepts ASCII ("->", "<->") and
// Unicode arrows; "<->", U+2194 and U+21CC are synonyms. Never throws on
// malformed input: the result carries either a scenario or error diagnostics.
parse_result parse_scenario(std::string_view text);

struct format_options {
    bool unicode = false;  // default emits pure ASCII arrows
};

std::string format_scenario(const scenario& s, notation_style style, format_options opts = {});

}  // namespace metascen::notation
