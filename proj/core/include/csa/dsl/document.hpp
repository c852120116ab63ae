#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "csa/dsl/types.hpp"

namespace csa::dsl {

enum class ParseFault { SyntaxError, SchemaError, InvariantError };

std::string_view to_string(ParseFault fault) noexcept;

/// Raised by parse_resource. `path()` is a slash-delimited locator into the
/// document ("/instructionSets/0/instructions/2/powerWatts"); empty for
/// syntax errors, which carry a byte offset in the message instead.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseFault fault, std::string path, const std::string& message)
      : std::runtime_error(message), fault_(fault), path_(std::move(path)) {}

  ParseFault fault() const noexcept { return fault_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ParseFault fault_;
  std::string path_;
};

/// Strict parse: unknown keys, missing keys, wrong JSON types and violated
/// type invariants are all rejected. Range rules that authors can
/// reasonably get wrong (power, duration, uniqueness, media kinds) are left
/// to lint() so they are reported together.
ProductResource parse_resource(std::string_view document);

/// Canonical form: fixed key order, two-space indentation, optional members
/// omitted when absent, UTF-8 passed through unescaped, trailing newline.
std::string serialize_resource(const ProductResource& resource);

/// Same content on a single line with no whitespace. Used inside
/// line-delimited transcripts.
std::string serialize_resource_compact(const ProductResource& resource);

}  // namespace csa::dsl
