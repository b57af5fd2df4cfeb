#include <gtest/gtest.h>

#include "nukc/exact.hpp"
#include "support.hpp"

namespace nukc {
namespace {

using testing::line;

TEST(Brute, SmallNukc) {
  NukcInstance inst{line({0, 1, 10}), {1, 0}, {1, 1}};
  const auto r = brute_solve(inst);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(verify_solution(inst, r.witness).pass());
  inst.budgets = {1, 0};
  EXPECT_FALSE(brute_solve(inst).feasible);
  EXPECT_TRUE(brute_solve(inst, {.dilation = 10}).feasible);
}

TEST(Brute, RefusesLargeSearches) {
  NukcInstance inst{testing::random_plane(*std::make_unique<std::mt19937_64>(1), 40, 50), {1, 1}, {10, 10}};
  EXPECT_THROW(brute_solve(inst, {.tuple_budget = 1000}), BudgetExceeded);
}

TEST(Brute, StructuredBlueNeedsTopOrCenter) {
  // three points share a location; a bottom center reaches all of them
  ColorfulInstance inst{line({0, 0, 0}), {1, 0}, {0, 1}, WeightFn({1, 0, 0}), WeightFn({0, 1, 1}), 1, 2, std::nullopt};
  EXPECT_TRUE(brute_solve(inst).feasible);
  BruteOptions opts;
  opts.structured = true;
  EXPECT_FALSE(brute_solve(inst, opts).feasible);
}

TEST(Brute, AgreesWithNaiveOracle) {
  std::mt19937_64 rng(37);
  for (int run = 0; run < 200; ++run) {
    const int n = testing::uniform(rng, 1, 6);
    const int t = testing::uniform(rng, 1, 3);
    RobustInstance inst{testing::random_plane(rng, n, 12), {}, {}, WeightFn(testing::random_weights(rng, n, 0, 3)), 0, std::nullopt};
    double r = testing::uniform(rng, 0, 8);
    for (int i = 0; i < t; ++i) {
      inst.radii.push_back(r);
      inst.budgets.push_back(testing::uniform(rng, 0, 2));
      r = testing::uniform(rng, 0, static_cast<int>(r));
    }
    inst.target = testing::uniform(rng, 0, static_cast<int>(inst.weight.total()));
    if (testing::uniform(rng, 0, 2) == 0) {
      PointSet ys;
      for (PointId p = 0; p < n; ++p) {
        bool ok = testing::uniform(rng, 0, 1) == 1;
        for (PointId y : ys) ok = ok && inst.space(p, y) > 1;
        if (ok) ys.push_back(p);
      }
      inst.restriction = make_restriction(inst.space, ys, 1);
    }
    const auto got = brute_solve(inst);
    EXPECT_EQ(got.feasible, testing::naive_robust_feasible(inst)) << "run " << run;
    if (got.feasible) EXPECT_TRUE(verify_solution(inst, got.witness).pass());
  }
}

TEST(Enumerate, ContainsEveryWitness) {
  RobustInstance inst{line({0, 5, 10}), {0}, {2}, WeightFn::unit(3), 2, std::nullopt};
  const auto all = enumerate_feasible(inst);
  EXPECT_EQ(all.size(), 3u);
  for (const auto& s : all) EXPECT_TRUE(verify_solution(inst, s).pass());
}

TEST(Plant, WitnessVerifiesAndIsReproducible) {
  for (auto variant : {PlantVariant::kNukc, PlantVariant::kRobust, PlantVariant::kColorful}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PlantParams params;
      params.n = 12;
      params.levels = variant == PlantVariant::kColorful ? 2 : 3;
      params.outliers = 2;
      params.separation_ratio = seed % 2 ? 30 : 0;
      const auto a = plant_instance(seed, variant, params);
      const auto b = plant_instance(seed, variant, params);
      EXPECT_EQ(a.witness, b.witness);
      EXPECT_TRUE(verify_solution(a.instance, a.witness).pass()) << seed;
      EXPECT_TRUE(validate_instance(a.instance).empty());
    }
  }
}

}  // namespace
}  // namespace nukc
