#include "nukc/net_reduction.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nukc {

NetContext build_net(const MetricSpace& space, double radius) {
  if (radius < 0) throw InputError("net radius must be nonnegative");
  NetContext ctx;
  ctx.space = space;
  ctx.radius = radius;
  for (PointId p = 0; p < space.size(); ++p) {
    const bool far = std::all_of(ctx.net.begin(), ctx.net.end(), [&](PointId y) { return space(p, y) > radius; });
    if (far) ctx.net.push_back(p);
  }
  ctx.assignment.resize(space.size());
  for (PointId p = 0; p < space.size(); ++p) {
    PointId best = ctx.net.front();
    for (PointId y : ctx.net) {
      if (space(p, y) < space(p, best)) best = y;
    }
    ctx.assignment[p] = best;
  }
  return ctx;
}

std::pair<RobustInstance, NetContext> reduce_to_robust(const NukcInstance& instance) {
  const int levels = instance.levels();
  if (levels < 2) throw InputError("net reduction needs at least two levels");
  const double last = instance.radii.back();
  const double shift = 2 * last;
  NetContext ctx = instance.space.size() == 0 ? NetContext{} : build_net(instance.space, shift);
  ctx.space = instance.space;
  ctx.radius = shift;
  ctx.original_radii = instance.radii;
  ctx.original_budgets = instance.budgets;

  RobustInstance out;
  out.space = instance.space.subspace(ctx.net);
  for (int i = 0; i + 1 < levels; ++i) {
    out.radii.push_back(instance.radii[i] + shift);
    out.budgets.push_back(instance.budgets[i]);
  }
  const int net_size = static_cast<int>(ctx.net.size());
  out.weight = WeightFn::unit(net_size);
  out.target = std::max<Weight>(0, net_size - instance.budgets.back());
  return {std::move(out), std::move(ctx)};
}

Solution lift_robust_solution(const NetContext& context, const Solution& solution) {
  const int t = static_cast<int>(context.original_radii.size()) - 1;
  if (solution.level_count() != t) throw InputError("solution does not match the reduced instance");
  const int net_size = static_cast<int>(context.net.size());
  const auto& d = context.space;

  Solution out;
  std::vector<char> covered(net_size, 0);
  for (int i = 0; i < t; ++i) {
    const auto& level = solution.levels[i];
    LevelAssignment lifted;
    lifted.radius = level.radius + context.radius;
    for (PointId c : level.centers) {
      if (c < 0 || c >= net_size) throw InputError(fmt::format("center {} is not a net point", c));
      const PointId x = context.net[c];
      lifted.centers.push_back(x);
      for (int j = 0; j < net_size; ++j) {
        if (d(x, context.net[j]) <= level.radius) covered[j] = 1;
      }
    }
    out.levels.push_back(std::move(lifted));
  }
  LevelAssignment last;
  last.radius = context.radius;
  for (int j = 0; j < net_size; ++j) {
    if (!covered[j]) last.centers.push_back(context.net[j]);
  }
  if (static_cast<int>(last.centers.size()) > context.original_budgets.back()) {
    throw ContractViolation(fmt::format("{} net points uncovered, only {} outliers allowed", last.centers.size(),
                                        context.original_budgets.back()));
  }
  out.levels.push_back(std::move(last));
  return out;
}

}  // namespace nukc
