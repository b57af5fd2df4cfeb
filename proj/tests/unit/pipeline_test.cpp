#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "nukc/exact.hpp"
#include "nukc/pipeline.hpp"
#include "support.hpp"

namespace nukc {
namespace {

using testing::line;

TEST(Constants, DefaultBetaIsTheSmallestRoot) {
  const double b = default_beta();
  const auto slack = [](double x) { return 26 / x + 81 / (x * x) + 212 / (x * x * x); };
  EXPECT_LE(slack(b), 1.0);
  EXPECT_GT(slack(b - 1e-5), 1.0);
  EXPECT_NEAR(b, 29.1, 0.1);
}

TEST(Constants, ComposedBoundsPerUnitRadius) {
  EXPECT_EQ(composed_bounds({1, 0, 0, 0}), (std::array<double, 4>{6, 0, 0, 0}));
  EXPECT_EQ(composed_bounds({0, 1, 0, 0}), (std::array<double, 4>{49, 23, 0, 0}));
  EXPECT_EQ(composed_bounds({0, 0, 1, 0}), (std::array<double, 4>{153, 72, 3, 0}));
  EXPECT_EQ(composed_bounds({0, 0, 0, 1}), (std::array<double, 4>{410, 192, 8, 2}));
}

TEST(Constants, ComposedConstant) {
  const double b = default_beta();
  EXPECT_NEAR(composed_constant(b), 23 + 72 / b + 192 / (b * b), 1e-9);
  EXPECT_NEAR(composed_constant(b), 25.7, 0.1);
  EXPECT_GT(composed_constant(40), 23);
  EXPECT_LT(composed_constant(40), composed_constant(b));
}

TEST(Pipeline, EmptyAndSingleLevel) {
  const auto one = solve_4nukc(NukcInstance{line({0, 1, 2}), {1}, {1}});
  ASSERT_EQ(one.status, PipelineStatus::kSolved);
  EXPECT_TRUE(verify_solution(NukcInstance{line({0, 1, 2}), {1}, {1}}, *one.solution).pass());
}

TEST(Pipeline, CloseRadiiMergeIntoOneLevel) {
  const NukcInstance inst{line({0, 1, 30, 31}), {2, 1}, {1, 1}};
  const auto res = solve_4nukc(inst);
  ASSERT_EQ(res.status, PipelineStatus::kSolved);
  EXPECT_EQ(res.ledger.merged_radii, (std::vector<double>{2, 0, 0, 0}));
  EXPECT_TRUE(verify_solution(inst, *res.solution).pass());
  for (int i = 0; i < 2; ++i) EXPECT_LE(res.ledger.realized_radius[i], res.ledger.bound_radius[i]);
}

TEST(Pipeline, ChainViolationIsAConfigError) {
  PipelineConfig config;
  config.beta = 1.5;
  EXPECT_THROW(solve_4nukc(NukcInstance{line({0, 100}), {10, 5, 2, 1}, {1, 1, 1, 1}}, config), ConfigError);
}

TEST(Pipeline, TooManyLevels) {
  EXPECT_THROW(solve_4nukc(NukcInstance{line({0}), {1e8, 1e6, 1e4, 1e2, 1}, {1, 1, 1, 1, 1}}), InputError);
}

TEST(Pipeline, RejectsInvalidInstances) {
  EXPECT_THROW(solve_4nukc(NukcInstance{line({0, 1}), {1, 2}, {1, 1}}), InputError);
}

// Planted, well-separated instances: the pipeline solves them and every level
// stays within its composed bound.
TEST(Pipeline, PlantedInstancesWithinBounds) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    PlantParams params;
    params.n = 8;
    params.levels = 2 + static_cast<int>(seed % 3);
    params.max_budget = 2;
    params.separation_ratio = 30;
    params.bottom_radius_max = 2;
    const auto planted = plant_instance(seed, PlantVariant::kNukc, params);
    const auto& inst = std::get<NukcInstance>(planted.instance);
    const auto res = solve_4nukc(inst);
    ASSERT_EQ(res.status, PipelineStatus::kSolved) << seed;
    EXPECT_TRUE(verify_solution(inst, *res.solution).pass());
    for (int i = 0; i < inst.levels(); ++i) {
      EXPECT_LE(res.ledger.realized_radius[i], res.ledger.bound_radius[i] + 1e-9);
      EXPECT_LE(res.ledger.realized_dilation[i], res.ledger.composed_constant + 1e-9);
    }
  }
}

TEST(Pipeline, RobustEntryPoint) {
  RobustInstance inst{line({0, 1, 40, 41, 500}), {2}, {2}, WeightFn::unit(5), 4, std::nullopt};
  const auto res = solve_robust(inst);
  ASSERT_EQ(res.status, PipelineStatus::kSolved);
  EXPECT_TRUE(verify_solution(inst, *res.solution).pass());
  inst.restriction = make_restriction(inst.space, {0}, 1);
  EXPECT_THROW(solve_robust(inst), InputError);
}

TEST(Pipeline, ColorfulWithRestriction) {
  const auto d = line({0, 1, 200, 201, 400});
  ColorfulInstance inst{d, {2, 0}, {1, 1}, WeightFn({1, 1, 0, 0, 1}), WeightFn({0, 0, 1, 1, 0}), 3, 0, std::nullopt};
  inst.restriction = make_restriction(d, {0, 2}, 150);
  const auto sol = solve_colorful(inst);
  ASSERT_TRUE(sol);
  EXPECT_TRUE(verify_solution(inst, *sol).coverage_ok);
  inst.blue_target = 2;
  EXPECT_FALSE(solve_colorful(inst));
  inst.restriction = make_restriction(d, {0, 1}, 0.5);
  EXPECT_THROW(solve_colorful(inst), ConfigError);
}

}  // namespace
}  // namespace nukc
