#include <gtest/gtest.h>

#include <algorithm>

#include "csa/dsl/select.hpp"
#include "generators.hpp"

namespace csa::dsl {
namespace {

ProductResource with_levels(const std::vector<std::int64_t>& levels) {
  testkit::Rng rng(1);
  ProductResource r{{testkit::random_barcode(rng), "x", "y", {"x.png", MediaKind::Image}}, {}};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    r.instruction_sets.push_back({"s" + std::to_string(i), levels[i],
                                  {UserInstruction{"go", {}, {}, {}, TransitionSpec::user_confirm()}}});
  }
  return r;
}

// Oracle: scan every set, keep the best by the written rule.
std::string oracle(const ProductResource& r, std::int64_t level) {
  const CookingInstructionSet* best_below = nullptr;
  const CookingInstructionSet* lowest = nullptr;
  for (const auto& s : r.instruction_sets) {
    if (s.ability_level <= level && (!best_below || s.ability_level > best_below->ability_level)) best_below = &s;
    if (!lowest || s.ability_level < lowest->ability_level) lowest = &s;
  }
  return best_below ? best_below->id : lowest->id;
}

TEST(Select, LevelExamples) {
  const auto r = with_levels({1, 3});
  EXPECT_EQ(select_instruction_set(r, 99).ability_level, 3);
  EXPECT_EQ(select_instruction_set(r, 1).ability_level, 1);
  EXPECT_EQ(select_instruction_set(r, 2).ability_level, 1);
  EXPECT_EQ(select_instruction_set(with_levels({2, 3}), 1).ability_level, 2);
}

TEST(Select, EarliestSetWinsOnTies) {
  const auto r = with_levels({2, 2, 1});
  EXPECT_EQ(select_instruction_set(r, 5).id, "s0");
}

TEST(Select, AgreesWithOracleExhaustively) {
  testkit::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::int64_t> levels;
    const auto n = testkit::uniform(rng, 1, 5);
    for (std::int64_t i = 0; i < n; ++i) levels.push_back(testkit::uniform(rng, 1, 8));
    const auto r = with_levels(levels);
    for (std::int64_t level = 0; level <= 10; ++level) {
      ASSERT_EQ(select_instruction_set(r, level).id, oracle(r, level));
    }
  }
}

}  // namespace
}  // namespace csa::dsl
