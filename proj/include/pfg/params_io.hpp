#pragma once

#include "pfg/arith.hpp"

#include <json.hpp>
#include <string>

namespace pfg {

nlohmann::ordered_json params_to_json(const Params& pr);
// Validates every tower invariant after loading.
Params params_from_json(const nlohmann::json& j);

nlohmann::ordered_json spec_to_json(const ParamSpec& s);
ParamSpec spec_from_json(const nlohmann::json& j);

// Flat TOML subset: `key = integer` lines, `#` comments, optional
// `[xi]` table of `"2M" = value` entries. Nothing else is accepted.
std::string params_to_toml(const Params& pr);
nlohmann::json toml_to_json(const std::string& text);

// A params file is either full Params (has "p") or a ParamSpec
// (m_base/k_mult); JSON if it starts with '{', TOML otherwise.
Params load_params_file(const std::string& path);

} // namespace pfg
