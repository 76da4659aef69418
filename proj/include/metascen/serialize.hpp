#pragma once

#include <json.hpp>

#include "metascen/catalog.hpp"
#include "metascen/scenario.hpp"

namespace metascen {

using ordered_json = nlohmann::ordered_json;

ordered_json scenario_to_json(const scenario& s);
scenario scenario_from_json(const nlohmann::json& j);  // throws metascen::error

ordered_json catalog_entry_to_json(const catalog_entry& e);
ordered_json catalog_to_json(const catalog& c);  // JSON array of rows

// Stable dump: 2-space indent plus trailing newline.
std::string dump_json(const ordered_json& j);

}  // namespace metascen
