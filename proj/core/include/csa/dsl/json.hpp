#pragma once

// nlohmann/json bindings for DSL values shared by the wire formats of the
// engine, simulator and service.

#include <json.hpp>

#include "csa/dsl/types.hpp"

namespace csa::dsl {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const MediaRef& ref);
ordered_json to_json(const TransitionSpec& spec);
ordered_json to_json(const ProductResource& resource);

/// Throws ParseError (SchemaError/InvariantError) with `path` prefixed.
MediaRef media_ref_from_json(const nlohmann::json& j, const std::string& path);
TransitionSpec transition_from_json(const nlohmann::json& j, const std::string& path);
ProductResource resource_from_json(const nlohmann::json& j);

}  // namespace csa::dsl
