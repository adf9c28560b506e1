#pragma once

#include <string>

#include <json.hpp>

namespace entrogeo::cli {

using Json = nlohmann::ordered_json;

/// Compact JSON with reals printed as %.17g; NaN and infinities become null.
std::string to_json(const Json& doc);

/// One "path  value" row per leaf.
std::string to_table(const Json& doc);

}  // namespace entrogeo::cli
