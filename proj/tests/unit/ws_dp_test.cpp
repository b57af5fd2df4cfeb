#include <gtest/gtest.h>

#include "nukc/exact.hpp"
#include "nukc/ws_dp.hpp"
#include "support.hpp"

namespace nukc {
namespace {

using testing::line;

TEST(Partition, BlocksAroundCandidates) {
  const auto d = line({0, 1, 10, 11, 30});
  const PointSet centers{0, 2};
  const auto part = partition_by_centers(d, centers, 2);
  ASSERT_EQ(part.blocks.size(), 3u);
  EXPECT_EQ(part.blocks[0], (PointSet{0, 1}));
  EXPECT_EQ(part.blocks[1], (PointSet{2, 3}));
  EXPECT_EQ(part.blocks[2], (PointSet{4}));
}

TEST(Inner, SmallKnapsack) {
  const WeightFn red({1, 0, 1}), blue({0, 5, 2});
  const PointSet block{0, 1, 2};
  EXPECT_TRUE(inner_feasible(block, 1, 1, 2, red, blue).feasible);
  EXPECT_FALSE(inner_feasible(block, 1, 1, 3, red, blue).feasible);
  const auto two = inner_feasible(block, 2, 1, 5, red, blue);
  ASSERT_TRUE(two.feasible);
  EXPECT_GE(red.sum(two.witness), 1);
  EXPECT_GE(blue.sum(two.witness), 5);
  EXPECT_TRUE(inner_feasible(block, 0, 0, 0, red, blue).feasible);
}

TEST(Inner, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(7);
  for (int run = 0; run < 300; ++run) {
    const int n = testing::uniform(rng, 0, 7);
    const WeightFn red(testing::random_weights(rng, n, 0, 3)), blue(testing::random_weights(rng, n, 0, 3));
    const PointSet block = testing::all_points(n);
    const int k = testing::uniform(rng, 0, 4);
    const Weight mr = testing::uniform(rng, 0, 6), mb = testing::uniform(rng, 0, 6);
    bool want = false;
    for (int size = 0; size <= std::min(k, n) && !want; ++size) {
      testing::combinations(block, size, [&](const PointSet& s) { want = want || (red.sum(s) >= mr && blue.sum(s) >= mb); });
    }
    const auto got = inner_feasible(block, k, mr, mb, red, blue);
    EXPECT_EQ(got.feasible, want);
    if (got.feasible) {
      EXPECT_LE(static_cast<int>(got.witness.size()), k);
      EXPECT_GE(red.sum(got.witness), mr);
      EXPECT_GE(blue.sum(got.witness), mb);
    }
  }
}

TEST(SolveWs, RejectsCloseCandidates) {
  ColorfulInstance inst{line({0, 1}), {2, 0}, {1, 1}, WeightFn::unit(2), WeightFn::zero(2), 1, 0, std::nullopt};
  const CenterRestriction close{{0, 1}, 0, 0};
  EXPECT_THROW(solve_ws(inst, close), InputError);
}

TEST(SolveWs, WorkedExample) {
  // clusters around 0 and 20, a lone point at 50
  const auto d = line({0, 1, 20, 21, 50});
  ColorfulInstance inst{d, {2, 0}, {1, 1}, WeightFn({1, 1, 0, 0, 1}), WeightFn({0, 0, 2, 2, 0}), 3, 0, std::nullopt};
  const auto restriction = make_restriction(d, {0, 2}, 4);
  auto res = solve_ws(inst, restriction);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.witness.levels[0].centers, (PointSet{0}));
  EXPECT_EQ(res.witness.levels[1].centers, (PointSet{4}));
  EXPECT_TRUE(verify_solution(inst, res.witness).pass());
  inst.blue_target = 1;
  EXPECT_FALSE(solve_ws(inst, restriction).feasible);
}

// Exact agreement with brute force restricted to the same candidates.
TEST(SolveWs, MatchesBruteForce) {
  std::mt19937_64 rng(19);
  int feasible = 0, infeasible = 0;
  for (int run = 0; run < 250; ++run) {
    const int n = testing::uniform(rng, 1, 8);
    const auto d = testing::random_plane(rng, n, 20);
    const double r1 = testing::uniform(rng, 0, 5);
    PointSet cands;
    for (PointId p = 0; p < n; ++p) {
      bool ok = testing::uniform(rng, 0, 2) > 0;
      for (PointId c : cands) ok = ok && d(p, c) > 2 * r1;
      if (ok) cands.push_back(p);
    }
    const CenterRestriction restriction{cands, 0, 2 * r1};
    std::vector<Weight> red(n, 0), blue(n, 0);
    for (int p = 0; p < n; ++p) (testing::uniform(rng, 0, 1) ? red[p] : blue[p]) = testing::uniform(rng, 0, 3);
    ColorfulInstance inst{d, {r1, 0}, {testing::uniform(rng, 0, 3), testing::uniform(rng, 0, 3)}, WeightFn(red), WeightFn(blue),
                          0, 0, std::nullopt};
    inst.red_target = testing::uniform(rng, 0, static_cast<int>(inst.red.total()));
    inst.blue_target = testing::uniform(rng, 0, static_cast<int>(inst.blue.total()));

    BruteOptions opts;
    opts.level_candidates = {cands, std::nullopt};
    opts.structured = true;
    const bool want = brute_solve(inst, opts).feasible;
    const auto got = solve_ws(inst, restriction);
    EXPECT_EQ(got.feasible, want) << "run " << run;
    (want ? feasible : infeasible)++;
    if (got.feasible) {
      auto restricted = inst;
      restricted.restriction = restriction;
      EXPECT_TRUE(verify_solution(restricted, got.witness).pass()) << "run " << run;
    }
  }
  EXPECT_GT(feasible, 30);
  EXPECT_GT(infeasible, 30);
}

}  // namespace
}  // namespace nukc
