#include "nukc/self_coverage.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace nukc {

MappingPairs mapping_procedure(const MetricSpace& space, std::span<const PointId> mega_points,
                               const GreedyOutput& greedy, std::span<const Ball> balls) {
  std::vector<int> position(space.size(), -1);
  for (int j = 0; j < greedy.size(); ++j) position[greedy.mega_points[j]] = j;
  PointSet order(mega_points.begin(), mega_points.end());
  for (PointId q : order) {
    if (!space.contains(q) || position[q] < 0) throw InputError(fmt::format("{} is not a mega-point", q));
  }
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) { return position[a] < position[b]; });

  MappingPairs out;
  std::vector<std::vector<int>> preimage(order.size());
  for (std::size_t b = 0; b < balls.size(); ++b) {
    const Ball& ball = balls[b];
    int hit = -1;
    for (std::size_t j = 0; j < order.size() && hit < 0; ++j) {
      for (PointId x : greedy.clusters[position[order[j]]]) {
        if (space(ball.center, x) <= ball.radius) {
          hit = static_cast<int>(j);
          break;
        }
      }
    }
    if (hit < 0) throw InputError(fmt::format("ball {} meets no cluster", b));
    out.target.push_back(order[hit]);
    preimage[hit].push_back(static_cast<int>(b));
  }

  std::size_t i = 0;
  while (i < order.size()) {
    if (preimage[i].empty()) {
      ++i;
      continue;
    }
    MappingPair pair;
    long pending = static_cast<long>(preimage[i].size()) - 1;
    pair.points.push_back(order[i]);
    pair.balls = preimage[i];
    while (pending > 0 && i + 1 < order.size()) {
      ++i;
      pending += static_cast<long>(preimage[i].size()) - 1;
      pair.points.push_back(order[i]);
      pair.balls.insert(pair.balls.end(), preimage[i].begin(), preimage[i].end());
    }
    out.pairs.push_back(std::move(pair));
    ++i;
  }
  return out;
}

namespace {

PointSet all_points(int n) {
  PointSet v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void require_two_levels(const ColorfulInstance& instance) {
  if (instance.levels() != 2) throw InputError("self-coverage reduction expects exactly two levels");
}

}  // namespace

std::pair<ColorfulInstance, BluePhaseContext> phase1_blue(const ColorfulInstance& instance) {
  require_two_levels(instance);
  const double r1 = instance.radii[0];
  const double r2 = instance.radii[1];

  BluePhaseContext ctx;
  ctx.greedy = greedy_clustering(instance.space, all_points(instance.space.size()), r2, 3.0, instance.blue);
  ctx.blue_migrated = ctx.greedy.migrated();
  ctx.bottom_radius = r2;
  ctx.shift = 3 * r2;
  ctx.red_target = instance.red_target;
  ctx.blue_target = instance.blue_target;

  ColorfulInstance out = instance;
  out.blue = ctx.blue_migrated;
  out.radii = {r1 + 6 * r2, 5 * r2};
  return {std::move(out), std::move(ctx)};
}

std::pair<ColorfulInstance, RedPhaseContext> phase2_red(const ColorfulInstance& intermediate,
                                                        const BluePhaseContext& blue_context) {
  require_two_levels(intermediate);
  const auto& d = intermediate.space;
  const int n = d.size();
  const double r1 = intermediate.radii[0];
  const double r2 = intermediate.radii[1];

  RedPhaseContext ctx;
  ctx.greedy = greedy_clustering(d, all_points(n), r2, 3.0, intermediate.red);
  ctx.red_mass = ctx.greedy.migrated();
  ctx.shift = 4 * r2;
  ctx.assignment.assign(n, -1);
  for (PointId p = 0; p < n; ++p) {
    for (int j = 0; j < ctx.greedy.size() && ctx.assignment[p] < 0; ++j) {
      for (PointId x : ctx.greedy.clusters[j]) {
        if (d(p, x) <= r2) {
          ctx.assignment[p] = ctx.greedy.mega_points[j];
          break;
        }
      }
    }
    if (ctx.assignment[p] < 0) throw InternalAssertion(fmt::format("point {} meets no red cluster", p));
  }
  std::vector<Weight> blue(n, 0);
  for (PointId p = 0; p < n; ++p) blue[ctx.assignment[p]] += blue_context.blue_migrated[p];
  ctx.blue_mass = WeightFn(std::move(blue));

  ColorfulInstance out = intermediate;
  out.red = ctx.red_mass;
  out.blue = ctx.blue_mass;
  out.radii = {r1 + 4 * r2, 0.0};
  return {std::move(out), std::move(ctx)};
}

Solution lift_self_coverage(const BluePhaseContext& blue_context, const RedPhaseContext& red_context,
                            const ColorfulInstance& reduced, const Solution& solution) {
  const auto report = verify_solution(reduced, solution);
  if (!report.coverage_ok || !report.ids_ok) {
    throw ContractViolation("self-coverage lift needs a solution meeting the reduced targets");
  }
  Solution out = solution;
  for (auto& level : out.levels) level.radius += red_context.shift + blue_context.shift;
  return out;
}

}  // namespace nukc
