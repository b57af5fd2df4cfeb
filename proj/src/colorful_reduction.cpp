#include "nukc/colorful_reduction.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace nukc {

namespace {

PointSet all_points(int n) {
  PointSet v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

PointSet weight_order(const WeightFn& w) {
  PointSet order = all_points(w.size());
  std::stable_sort(order.begin(), order.end(), [&](PointId a, PointId b) { return w[a] > w[b]; });
  return order;
}

}  // namespace

std::pair<RobustInstance, Phase1Context> phase1(const RobustInstance& instance) {
  const int t = instance.levels();
  if (t < 2) throw InputError("robust-to-colorful reduction needs at least two levels");
  const double bottom = instance.radii.back();
  const PointSet domain = all_points(instance.space.size());

  Phase1Context ctx;
  ctx.greedy = greedy_clustering(instance.space, domain, bottom, 3.0, instance.weight);
  ctx.migrated = ctx.greedy.migrated();
  ctx.target = instance.target;
  ctx.shift = 3 * bottom;
  ctx.original_radii = instance.radii;
  ctx.space = instance.space;

  RobustInstance out = instance;
  out.weight = ctx.migrated;
  for (int i = 0; i + 1 < t; ++i) out.radii[i] = instance.radii[i] + ctx.shift;
  out.radii.back() = 0.0;
  return {std::move(out), std::move(ctx)};
}

Solution phase1_lift(const Phase1Context& context, const Solution& solution) {
  if (solution.level_count() != static_cast<int>(context.original_radii.size())) {
    throw InputError("solution does not match the phase-1 instance");
  }
  const auto covered = covered_mask(context.space, solution);
  Weight mass = 0;
  for (PointId p = 0; p < context.space.size(); ++p) {
    if (covered[p]) mass += context.migrated[p];
  }
  if (mass < context.target) {
    throw ContractViolation(fmt::format("migrated coverage {} below target {}", mass, context.target));
  }
  Solution out = solution;
  for (auto& level : out.levels) level.radius += context.shift;
  return out;
}

ColorfulSplit phase2_split_at(const RobustInstance& instance, int split) {
  const int n = instance.space.size();
  const int t = instance.levels();
  if (t < 2 || instance.radii.back() != 0) throw InputError("split needs a zero bottom radius");
  if (split < 0 || split > n) throw InputError("split index out of range");

  SplitContext ctx;
  ctx.split = split;
  ctx.order = weight_order(instance.weight);
  ctx.red.assign(ctx.order.begin(), ctx.order.begin() + split);
  ctx.blue.assign(ctx.order.begin() + split, ctx.order.end());
  ctx.bottom_budget = instance.budgets.back();
  ctx.red_target_raw = static_cast<Weight>(split) - ctx.bottom_budget;
  ctx.blue_target_raw = instance.target - instance.weight.sum(ctx.red);
  ctx.space = instance.space;

  std::vector<Weight> blue(n, 0);
  for (PointId p : ctx.blue) blue[p] = instance.weight[p];

  ColorfulInstance out;
  out.space = instance.space;
  out.radii.assign(instance.radii.begin(), instance.radii.end() - 1);
  out.budgets.assign(instance.budgets.begin(), instance.budgets.end() - 1);
  out.red = WeightFn::indicator(n, ctx.red);
  out.blue = WeightFn(std::move(blue));
  out.red_target = std::max<Weight>(0, ctx.red_target_raw);
  out.blue_target = std::max<Weight>(0, ctx.blue_target_raw);
  out.restriction = instance.restriction;
  return {std::move(out), std::move(ctx)};
}

std::vector<ColorfulSplit> phase2_split(const RobustInstance& instance) {
  std::vector<ColorfulSplit> out;
  for (int split = 0; split <= instance.space.size(); ++split) out.push_back(phase2_split_at(instance, split));
  return out;
}

Solution phase2_lift(const SplitContext& context, const ColorfulInstance& split_instance, const Solution& solution) {
  const auto report = verify_solution(split_instance, solution);
  if (!report.coverage_ok) throw ContractViolation("colorful solution misses its targets: " + report.failures.front());
  const auto covered = covered_mask(context.space, solution);
  LevelAssignment bottom;
  for (PointId p : context.red) {
    if (!covered[p]) bottom.centers.push_back(p);
  }
  std::sort(bottom.centers.begin(), bottom.centers.end());
  if (static_cast<int>(bottom.centers.size()) > context.bottom_budget) {
    throw ContractViolation(fmt::format("{} red points uncovered, bottom budget is {}", bottom.centers.size(),
                                        context.bottom_budget));
  }
  Solution out = solution;
  out.levels.push_back(std::move(bottom));
  return out;
}

}  // namespace nukc
