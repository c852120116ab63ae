#pragma once

#include <cstdint>

#include "csa/dsl/types.hpp"

namespace csa::dsl {

/// Picks the set with the greatest ability level not above `ability_level`;
/// when every set is above it, the most detailed set (lowest level) is
/// used. Ties on level cannot occur in lint-clean resources; if they do,
/// the earliest set wins.
const CookingInstructionSet& select_instruction_set(const ProductResource& resource,
                                                    std::int64_t ability_level);

}  // namespace csa::dsl
