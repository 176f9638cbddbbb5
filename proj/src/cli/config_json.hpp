#pragma once

#include <json.hpp>

#include <string>

#include "ncchain/cli.hpp"

namespace ncchain::cli {

OutputFormat parse_format(const std::string& name);

/// root itself, or root["params"] when root is a previous JSON output.
const nlohmann::json& config_object(const nlohmann::json& root);

/// Sets config[key] = value; a constant-group key drops the keys of other groups.
void merge_override(nlohmann::json& config, const std::string& key, nlohmann::json value);

RunConfig config_from_json(const nlohmann::json& root);
nlohmann::json config_json_value(const RunConfig& config);

}  // namespace ncchain::cli
