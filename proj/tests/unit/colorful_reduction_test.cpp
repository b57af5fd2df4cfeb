#include <gtest/gtest.h>

#include "nukc/colorful_reduction.hpp"
#include "nukc/exact.hpp"
#include "support.hpp"

namespace nukc {
namespace {

using testing::line;

RobustInstance small_line() {
  // coordinates 0, 1, 2, 10
  return RobustInstance{line({0, 1, 2, 10}), {5, 1}, {1, 1}, WeightFn::unit(4), 4, std::nullopt};
}

RobustInstance with_radii(RobustInstance inst, const std::vector<double>& radii) {
  inst.radii = radii;
  return inst;
}

TEST(Phase1, MigratesBottomClusters) {
  auto [out, ctx] = phase1(small_line());
  EXPECT_EQ(ctx.greedy.mega_points, (PointSet{1, 3}));
  EXPECT_EQ(out.weight.values(), (std::vector<Weight>{0, 3, 0, 1}));
  EXPECT_EQ(out.radii, (std::vector<double>{8, 0}));
  EXPECT_EQ(out.target, 4);
  EXPECT_TRUE(brute_solve(out).feasible);
}

TEST(Phase1, NeedsTwoLevels) {
  RobustInstance inst{line({0, 1}), {1}, {1}, WeightFn::unit(2), 1, std::nullopt};
  EXPECT_THROW(phase1(inst), InputError);
}

TEST(Phase1, LiftAddsShift) {
  auto [out, ctx] = phase1(small_line());
  const Solution lifted = phase1_lift(ctx, Solution{{{{1}, 8}, {{3}, 0}}});
  EXPECT_EQ(lifted.levels[0].radius, 11);
  EXPECT_EQ(lifted.levels[1].radius, 3);
  EXPECT_TRUE(verify_solution(with_radii(small_line(), {11, 3}), lifted).pass());
  EXPECT_THROW(phase1_lift(ctx, Solution{{{{3}, 8}, {{}, 0}}}), ContractViolation);
}

TEST(Phase2, SplitByWeightOrder) {
  auto [reduced, ctx] = phase1(small_line());
  const auto split = phase2_split_at(reduced, 1);
  EXPECT_EQ(split.context.order, (PointSet{1, 3, 0, 2}));
  EXPECT_EQ(split.context.red, (PointSet{1}));
  EXPECT_EQ(split.instance.red_target, 0);
  EXPECT_EQ(split.instance.blue_target, 1);
  EXPECT_EQ(split.instance.blue.values(), (std::vector<Weight>{0, 0, 0, 1}));
  EXPECT_EQ(split.instance.radii, (std::vector<double>{8}));
  EXPECT_EQ(phase2_split(reduced).size(), 5u);

  const Solution lifted = phase2_lift(split.context, split.instance, Solution{{{{3}, 8}}});
  EXPECT_EQ(lifted.levels[1].centers, (PointSet{1}));
  EXPECT_TRUE(verify_solution(reduced, lifted).pass());
}

TEST(Phase2, LiftRejectsTooManyUncoveredRed) {
  auto [reduced, ctx] = phase1(small_line());
  const auto split = phase2_split_at(reduced, 3);
  // red = {1, 3, 0}, target 3 - 1 = 2; covering only point 1 leaves two uncovered
  EXPECT_THROW(phase2_lift(split.context, split.instance, Solution{{{{3}, 8}}}), ContractViolation);
}

TEST(Phase2, RejectsNonzeroBottom) { EXPECT_THROW(phase2_split_at(small_line(), 0), InputError); }

// Feasible robust instances stay feasible through both phases, and solutions
// of a feasible split lift back to valid solutions.
TEST(ColorfulReduction, PreservesFeasibilityAndLifts) {
  std::mt19937_64 rng(17);
  int feasible_runs = 0;
  for (int run = 0; run < 120; ++run) {
    const int n = testing::uniform(rng, 2, 7);
    RobustInstance inst{testing::random_plane(rng, n, 12), {0, 0}, {testing::uniform(rng, 0, 2), testing::uniform(rng, 0, 2)},
                        WeightFn(testing::random_weights(rng, n, 0, 3)), 0, std::nullopt};
    inst.radii[1] = testing::uniform(rng, 0, 2);
    inst.radii[0] = inst.radii[1] + testing::uniform(rng, 0, 8);
    inst.target = testing::uniform(rng, 0, static_cast<int>(inst.weight.total()));
    if (!testing::naive_robust_feasible(inst)) continue;
    ++feasible_runs;

    auto [reduced, ctx] = phase1(inst);
    ASSERT_TRUE(testing::naive_robust_feasible(reduced)) << "run " << run;
    bool any = false;
    for (const auto& split : phase2_split(reduced)) {
      const auto found = brute_solve(split.instance);
      if (!found.feasible) continue;
      any = true;
      const Solution back = phase2_lift(split.context, split.instance, found.witness);
      EXPECT_TRUE(verify_solution(reduced, back).pass());
      const Solution lifted = phase1_lift(ctx, back);
      RobustInstance grown = inst;
      for (int i = 0; i < 2; ++i) grown.radii[i] = lifted.levels[i].radius;
      EXPECT_TRUE(verify_solution(grown, lifted).pass());
      EXPECT_EQ(lifted.levels[0].radius, inst.radii[0] + 6 * inst.radii[1]);
    }
    EXPECT_TRUE(any) << "run " << run;
  }
  EXPECT_GT(feasible_runs, 30);
}

}  // namespace
}  // namespace nukc
