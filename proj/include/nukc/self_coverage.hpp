#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nukc/core.hpp"
#include "nukc/greedy.hpp"

namespace nukc {

struct Ball {
  PointId center = 0;
  double radius = 0.0;
};

struct MappingPair {
  PointSet points;        // contiguous run of the mega-point order
  std::vector<int> balls;  // indices into the ball list
};

struct MappingPairs {
  std::vector<MappingPair> pairs;
  // target[b] is the first mega-point whose cluster meets ball b.
  std::vector<PointId> target;
};

// Groups balls with runs of mega-points so that every run but the last has as
// many points as balls. `mega_points` must be a subsequence of greedy.mega_points.
MappingPairs mapping_procedure(const MetricSpace& space, std::span<const PointId> mega_points,
                               const GreedyOutput& greedy, std::span<const Ball> balls);

struct BluePhaseContext {
  GreedyOutput greedy;
  WeightFn blue_migrated;
  double bottom_radius = 0.0;  // r_2 of the input
  double shift = 0.0;          // 3 * r_2
  Weight red_target = 0;
  Weight blue_target = 0;
};

struct RedPhaseContext {
  GreedyOutput greedy;
  std::vector<PointId> assignment;  // each point to a red mega-point
  WeightFn red_mass;
  WeightFn blue_mass;
  double shift = 0.0;  // 4 * r'_2
};

// Two-level colorful instance: migrate blue weight at radius r_2 and set
// radii to (r_1 + 6 r_2, 5 r_2).
std::pair<ColorfulInstance, BluePhaseContext> phase1_blue(const ColorfulInstance& instance);

// Migrate red weight at radius r'_2, pull blue weight back along the red
// assignment, and set radii to (r'_1 + 4 r'_2, 0).
std::pair<ColorfulInstance, RedPhaseContext> phase2_red(const ColorfulInstance& intermediate,
                                                        const BluePhaseContext& blue_context);

// Lifts a solution of the final instance to the original one: every ball grows
// by 4 r'_2 + 3 r_2 = 23 r_2.
Solution lift_self_coverage(const BluePhaseContext& blue_context, const RedPhaseContext& red_context,
                            const ColorfulInstance& reduced, const Solution& solution);

}  // namespace nukc
