#include "csa/dsl/select.hpp"

#include <stdexcept>

namespace csa::dsl {

const CookingInstructionSet& select_instruction_set(const ProductResource& resource,
                                                    std::int64_t ability_level) {
  const auto& sets = resource.instruction_sets;
  if (sets.empty()) throw std::invalid_argument("resource has no instruction sets");

  const CookingInstructionSet* best = nullptr;
  const CookingInstructionSet* most_detailed = &sets.front();
  for (const auto& s : sets) {
    if (s.ability_level < most_detailed->ability_level) most_detailed = &s;
    if (s.ability_level <= ability_level && (!best || s.ability_level > best->ability_level)) {
      best = &s;
    }
  }
  return best ? *best : *most_detailed;
}

}  // namespace csa::dsl
