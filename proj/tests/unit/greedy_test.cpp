#include <gtest/gtest.h>

#include <set>

#include "nukc/greedy.hpp"
#include "support.hpp"

namespace nukc {
namespace {

using testing::line;

TEST(Greedy, EmptyDomain) {
  const auto out = greedy_clustering(line({0, 1}), PointSet{}, 1, 3, WeightFn::zero(2));
  EXPECT_EQ(out.size(), 0);
}

TEST(Greedy, ThreePointLine) {
  const auto out = greedy_clustering(line({0, 1, 2}), testing::all_points(3), 1, 3, WeightFn::unit(3));
  EXPECT_EQ(out.mega_points, (PointSet{1}));
  EXPECT_EQ(out.clusters, (std::vector<PointSet>{{0, 1, 2}}));
  EXPECT_EQ(out.weights, (std::vector<Weight>{3}));
}

TEST(Greedy, TiesGoToSmallestId) {
  // coordinates 0, 1, 5, 6
  const auto out = greedy_clustering(line({0, 1, 5, 6}), testing::all_points(4), 1, 3, WeightFn::unit(4));
  EXPECT_EQ(out.mega_points, (PointSet{0, 2}));
  EXPECT_EQ(out.clusters, (std::vector<PointSet>{{0, 1}, {2, 3}}));
  EXPECT_EQ(out.weights, (std::vector<Weight>{2, 2}));
}

TEST(Greedy, CandidatesOutsideTheDomain) {
  // Domain {0, 2} at coordinates -1 and 1; the point at 0 sees both.
  const auto out = greedy_clustering(line({-1, 0, 1}), PointSet{0, 2}, 1, 1, WeightFn({1, 0, 1}));
  EXPECT_EQ(out.mega_points, (PointSet{1}));
  EXPECT_EQ(out.clusters.front(), (PointSet{0, 2}));
}

TEST(Greedy, ZeroWeightCandidatesStayEligible) {
  const auto out = greedy_clustering(line({0, 10}), testing::all_points(2), 1, 3, WeightFn({0, 0}));
  EXPECT_EQ(out.mega_points, (PointSet{0, 1}));
  EXPECT_EQ(out.weights, (std::vector<Weight>{0, 0}));
}

TEST(Greedy, WeightOutsideDomainIsRejected) {
  EXPECT_THROW(greedy_clustering(line({0, 1}), PointSet{0}, 1, 3, WeightFn({1, 1})), InputError);
}

TEST(Greedy, MigratedWeightConserved) {
  std::mt19937_64 rng(8);
  for (int run = 0; run < 200; ++run) {
    const int n = testing::uniform(rng, 1, 10);
    const auto d = testing::random_plane(rng, n, 20);
    const WeightFn w(testing::random_weights(rng, n, 0, 4));
    const auto out = greedy_clustering(d, testing::all_points(n), testing::uniform(rng, 0, 5), 3, w);
    EXPECT_EQ(out.migrated().total(), w.total());
  }
}

TEST(Greedy, ClusterWeightCanGrow) {
  // Point 0 wins on its own ball, yet the later cluster around 2 collects more.
  const auto out = greedy_clustering(line({0, 96, 97, 98, 100}), testing::all_points(5), 1, 3, WeightFn({5, 2, 0, 2, 2}));
  EXPECT_EQ(out.mega_points, (PointSet{0, 2}));
  EXPECT_EQ(out.weights, (std::vector<Weight>{5, 6}));
}

TEST(Greedy, SelectionScoresDoNotIncrease) {
  std::mt19937_64 rng(13);
  for (int run = 0; run < 300; ++run) {
    const int n = testing::uniform(rng, 1, 10);
    const auto d = testing::random_plane(rng, n, 12);
    const WeightFn w(testing::random_weights(rng, n, 0, 5));
    const double r = testing::uniform(rng, 0, 4);
    const auto out = greedy_clustering(d, testing::all_points(n), r, 3, w);
    std::vector<char> open(n, 1);
    Weight previous = w.total() + 1;
    for (int j = 0; j < out.size(); ++j) {
      Weight score = 0;
      for (PointId u = 0; u < n; ++u)
        if (open[u] && d(out.mega_points[j], u) <= r) score += w[u];
      EXPECT_LE(score, previous);
      previous = score;
      for (PointId u : out.clusters[j]) open[u] = 0;
    }
  }
}

TEST(FirstK, PrefixSums) {
  GreedyOutput out;
  out.weights = {3, 2, 1};
  out.mega_points = {0, 1, 2};
  EXPECT_EQ(first_k_weight(out, 2), 5);
  EXPECT_EQ(first_k_weight(out, 0), 0);
  out.weights = {2, 2};
  out.mega_points = {0, 1};
  EXPECT_EQ(first_k_weight(out, 5), 4);
}

// Step-by-step simulation written against sets, used as an independent oracle.
GreedyOutput simulate(const MetricSpace& d, const PointSet& domain, double r, double gamma, const WeightFn& w) {
  GreedyOutput out;
  std::set<PointId> open(domain.begin(), domain.end());
  while (!open.empty()) {
    std::optional<std::pair<Weight, PointId>> best;
    for (PointId q = 0; q < d.size(); ++q) {
      Weight s = 0;
      bool any = false;
      for (PointId u : open) {
        if (d.distance(q, u) <= r) {
          any = true;
          s += w[u];
        }
      }
      if (any && (!best || s > best->first)) best = {{s, q}};
    }
    PointSet cluster;
    for (PointId u : open) {
      if (d.distance(best->second, u) <= gamma * r) cluster.push_back(u);
    }
    for (PointId u : cluster) open.erase(u);
    out.mega_points.push_back(best->second);
    out.weights.push_back(w.sum(cluster));
    out.clusters.push_back(std::move(cluster));
  }
  return out;
}

TEST(Greedy, MatchesSimulationOracle) {
  std::mt19937_64 rng(21);
  for (int run = 0; run < 300; ++run) {
    const int n = testing::uniform(rng, 1, 11);
    const auto d = testing::random_plane(rng, n, 16);
    PointSet domain;
    std::vector<Weight> w(n, 0);
    for (PointId p = 0; p < n; ++p) {
      if (testing::uniform(rng, 0, 3) > 0) {
        domain.push_back(p);
        w[p] = testing::uniform(rng, 0, 4);
      }
    }
    const double r = testing::uniform(rng, 0, 6);
    const double gamma = 1 + testing::uniform(rng, 0, 3);
    const auto got = greedy_clustering(d, domain, r, gamma, WeightFn(w));
    const auto want = simulate(d, domain, r, gamma, WeightFn(w));
    EXPECT_EQ(got.mega_points, want.mega_points);
    EXPECT_EQ(got.clusters, want.clusters);
    EXPECT_EQ(got.weights, want.weights);
  }
}

}  // namespace
}  // namespace nukc
