#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "csa/dsl/types.hpp"

namespace csa::dsl {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity) noexcept;

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string rule;  // "L1".."L7"
  std::string path;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct LintReport {
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const noexcept;
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;

  /// {"diagnostics":[{"severity","rule","path","message"}...]}
  std::string to_json() const;
  /// One "severity rule path message" line per diagnostic.
  std::string to_text() const;

  friend bool operator==(const LintReport&, const LintReport&) = default;
};

// Rules:
//   L1 door-context   device step with the door provably open (error) or
//                     in an unknown door context (warning)
//   L2 first-heat     no food-placement step before the first device step
//                     (warning)
//   L3 bounds         power/duration/timer outside the envelope (error)
//   L4 uniqueness     duplicate set ids or ability levels (error)
//   L5 media-kind     media field referencing the wrong kind (error)
//   L6 heats          device step with the magnetron off (error)
//   L7 light          device step with the light off (error)
LintReport lint(const ProductResource& resource);

/// Per-set rules (L1-L3, L5-L7). `path` is the set's locator, e.g.
/// "/instructionSets/1".
LintReport lint_set(const CookingInstructionSet& set, std::string_view path = "");

}  // namespace csa::dsl
