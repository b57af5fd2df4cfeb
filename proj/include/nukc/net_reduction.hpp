#pragma once

#include <utility>
#include <vector>

#include "nukc/core.hpp"

namespace nukc {

struct NetContext {
  MetricSpace space;
  PointSet net;
  // assignment[x] is the nearest net point to x (smallest id on ties).
  std::vector<PointId> assignment;
  double radius = 0.0;
  std::vector<double> original_radii;
  std::vector<int> original_budgets;
};

// Greedy maximal net: scans ids in order and keeps a point iff it is more than
// `radius` away from every kept point.
NetContext build_net(const MetricSpace& space, double radius);

// Drops the last level of a NUkC instance: the result lives on the net of
// radius 2 * (last radius) with unit weights, and may leave as many net points
// uncovered as the last level had balls. Point j of the result is context.net[j].
std::pair<RobustInstance, NetContext> reduce_to_robust(const NukcInstance& instance);

// Lifts a solution of the reduced instance (net-local ids) to the original
// instance: every ball grows by the net radius and each uncovered net point
// gets a ball of the net radius on the last level.
Solution lift_robust_solution(const NetContext& context, const Solution& solution);

}  // namespace nukc
