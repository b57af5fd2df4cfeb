#include <gtest/gtest.h>

#include "nukc/exact.hpp"
#include "nukc/self_coverage.hpp"
#include "support.hpp"

namespace nukc {
namespace {

using testing::line;

TEST(Mapping, RunsMatchBallCounts) {
  // mega-points at 0, 10, 20, 30 with singleton clusters
  const auto d = line({0, 10, 20, 30});
  const auto g = greedy_clustering(d, testing::all_points(4), 1, 3, WeightFn({4, 3, 2, 1}));
  ASSERT_EQ(g.mega_points, (PointSet{0, 1, 2, 3}));
  const std::vector<Ball> balls{{0, 1}, {0, 2}, {2, 0}};
  const auto m = mapping_procedure(d, g.mega_points, g, balls);
  EXPECT_EQ(m.target, (std::vector<PointId>{0, 0, 2}));
  ASSERT_EQ(m.pairs.size(), 2u);
  EXPECT_EQ(m.pairs[0].points, (PointSet{0, 1}));
  EXPECT_EQ(m.pairs[0].balls, (std::vector<int>{0, 1}));
  EXPECT_EQ(m.pairs[1].points, (PointSet{2}));
  EXPECT_EQ(m.pairs[1].balls, (std::vector<int>{2}));
}

TEST(Mapping, BallMissingEveryClusterIsRejected) {
  const auto d = line({0, 10});
  const auto g = greedy_clustering(d, PointSet{0}, 1, 3, WeightFn({1, 0}));
  const std::vector<Ball> balls{{1, 2}};
  EXPECT_THROW(mapping_procedure(d, g.mega_points, g, balls), InputError);
}

TEST(Mapping, StructuralInvariants) {
  std::mt19937_64 rng(31);
  for (int run = 0; run < 300; ++run) {
    const int n = testing::uniform(rng, 1, 12);
    const auto d = testing::random_plane(rng, n, 20);
    const auto g = greedy_clustering(d, testing::all_points(n), testing::uniform(rng, 0, 3), 3, WeightFn::unit(n));
    std::vector<Ball> balls;
    for (int b = testing::uniform(rng, 0, 5); b > 0; --b)
      balls.push_back({testing::uniform(rng, 0, n - 1), static_cast<double>(testing::uniform(rng, 0, 4))});
    const auto m = mapping_procedure(d, g.mega_points, g, balls);
    std::vector<int> seen;
    std::vector<int> pos(n, -1);
    for (int j = 0; j < g.size(); ++j) pos[g.mega_points[j]] = j;
    for (std::size_t k = 0; k < m.pairs.size(); ++k) {
      const auto& pair = m.pairs[k];
      for (std::size_t j = 1; j < pair.points.size(); ++j) EXPECT_EQ(pos[pair.points[j]], pos[pair.points[j - 1]] + 1);
      if (k + 1 < m.pairs.size()) EXPECT_EQ(pair.points.size(), pair.balls.size());
      EXPECT_LE(pair.points.size(), pair.balls.size());
      seen.insert(seen.end(), pair.balls.begin(), pair.balls.end());
    }
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(balls.size());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(seen, all);
  }
}

ColorfulInstance two_level(const MetricSpace& d, double r1, double r2, std::vector<int> budgets, WeightFn red, WeightFn blue,
                           Weight mr, Weight mb) {
  return ColorfulInstance{d, {r1, r2}, std::move(budgets), std::move(red), std::move(blue), mr, mb, std::nullopt};
}

TEST(SelfCoverage, RadiusSchedule) {
  const auto d = line({0, 1, 2, 9});
  const auto inst = two_level(d, 4, 1, {1, 1}, WeightFn({1, 0, 1, 0}), WeightFn({0, 1, 0, 1}), 2, 1);
  auto [mid, blue_ctx] = phase1_blue(inst);
  EXPECT_EQ(mid.radii, (std::vector<double>{10, 5}));
  EXPECT_EQ(mid.blue.total(), 2);
  auto [fin, red_ctx] = phase2_red(mid, blue_ctx);
  EXPECT_EQ(fin.radii, (std::vector<double>{30, 0}));
  EXPECT_EQ(fin.red.total(), 2);
  EXPECT_EQ(fin.blue.total(), 2);
  const auto found = brute_solve(fin);
  ASSERT_TRUE(found.feasible);
  const Solution lifted = lift_self_coverage(blue_ctx, red_ctx, fin, found.witness);
  EXPECT_EQ(lifted.levels[0].radius, 4 + 49 * 1);
  EXPECT_EQ(lifted.levels[1].radius, 23);
}

TEST(SelfCoverage, LiftRejectsShortSolutions) {
  const auto d = line({0, 100});
  const auto inst = two_level(d, 1, 1, {1, 0}, WeightFn({1, 1}), WeightFn::zero(2), 2, 0);
  auto [mid, blue_ctx] = phase1_blue(inst);
  auto [fin, red_ctx] = phase2_red(mid, blue_ctx);
  EXPECT_THROW(lift_self_coverage(blue_ctx, red_ctx, fin, Solution{{{{0}, 30}, {{}, 0}}}), ContractViolation);
}

// Feasible two-level colorful instances reduce to feasible instances, and their
// solutions lift to solutions of the original at radii grown by 23 r_2.
TEST(SelfCoverage, PreservesFeasibilityAndLifts) {
  std::mt19937_64 rng(41);
  int feasible_runs = 0;
  for (int run = 0; run < 150; ++run) {
    const int n = testing::uniform(rng, 2, 7);
    const auto d = testing::random_plane(rng, n, 14);
    std::vector<Weight> red(n, 0), blue(n, 0);
    for (int p = 0; p < n; ++p) (testing::uniform(rng, 0, 1) ? red[p] : blue[p]) = testing::uniform(rng, 0, 3);
    const double r2 = testing::uniform(rng, 0, 2);
    auto inst = two_level(d, r2 + testing::uniform(rng, 0, 6), r2, {testing::uniform(rng, 0, 2), testing::uniform(rng, 0, 2)},
                          WeightFn(red), WeightFn(blue), 0, 0);
    inst.red_target = testing::uniform(rng, 0, static_cast<int>(inst.red.total()));
    inst.blue_target = testing::uniform(rng, 0, static_cast<int>(inst.blue.total()));
    if (!brute_solve(inst).feasible) continue;
    ++feasible_runs;
    auto [mid, blue_ctx] = phase1_blue(inst);
    EXPECT_TRUE(brute_solve(mid).feasible) << "run " << run;
    auto [fin, red_ctx] = phase2_red(mid, blue_ctx);
    const auto found = brute_solve(fin);
    ASSERT_TRUE(found.feasible) << "run " << run;
    const Solution lifted = lift_self_coverage(blue_ctx, red_ctx, fin, found.witness);
    auto grown = inst;
    grown.radii = {inst.radii[0] + 49 * r2, 23 * r2};
    EXPECT_TRUE(verify_solution(grown, lifted).pass()) << "run " << run;
  }
  EXPECT_GT(feasible_runs, 40);
}

}  // namespace
}  // namespace nukc
