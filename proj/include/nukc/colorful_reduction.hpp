#pragma once

#include <utility>
#include <vector>

#include "nukc/core.hpp"
#include "nukc/greedy.hpp"

namespace nukc {

struct Phase1Context {
  GreedyOutput greedy;
  WeightFn migrated;
  Weight target = 0;
  double shift = 0.0;  // 3 * bottom radius
  std::vector<double> original_radii;
  MetricSpace space;
};

struct SplitContext {
  int split = 0;
  PointSet order;  // points by nonincreasing migrated weight, smallest id on ties
  PointSet red;    // first `split` points of `order`
  PointSet blue;
  Weight red_target_raw = 0;
  Weight blue_target_raw = 0;
  int bottom_budget = 0;
  MetricSpace space;
};

// Moves the weight of each bottom-radius cluster onto its mega-point and sets
// the bottom radius to 0; the other radii grow by three bottom radii.
std::pair<RobustInstance, Phase1Context> phase1(const RobustInstance& instance);

Solution phase1_lift(const Phase1Context& context, const Solution& solution);

struct ColorfulSplit {
  ColorfulInstance instance;
  SplitContext context;
};

// One colorful instance (dropping the zero-radius bottom level) per prefix
// length 0..n of the weight order: the prefix is red with unit weight, the
// rest carries its migrated weight as blue.
std::vector<ColorfulSplit> phase2_split(const RobustInstance& instance);

// Builds only the split for the given prefix length.
ColorfulSplit phase2_split_at(const RobustInstance& instance, int split);

// Adds a radius-0 ball on the bottom level at every red point left uncovered.
Solution phase2_lift(const SplitContext& context, const ColorfulInstance& split_instance, const Solution& solution);

}  // namespace nukc
