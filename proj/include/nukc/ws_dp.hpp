#pragma once

#include <span>
#include <vector>

#include "nukc/core.hpp"

namespace nukc {

// blocks[i] = points within r_1 of candidate i, for each candidate; the final
// block holds every remaining point.
struct PartitionByCenters {
  PointSet centers;
  std::vector<PointSet> blocks;

  int candidate_blocks() const { return static_cast<int>(centers.size()); }
};

PartitionByCenters partition_by_centers(const MetricSpace& space, std::span<const PointId> centers, double radius);

struct InnerResult {
  bool feasible = false;
  PointSet witness;
};

// Is there a subset of `block` with at most `k` points reaching red weight
// `red_target` and blue weight `blue_target`?
InnerResult inner_feasible(std::span<const PointId> block, int k, Weight red_target, Weight blue_target,
                           const WeightFn& red, const WeightFn& blue);

struct WsResult {
  bool feasible = false;
  Solution witness;
};

// Exact decision for two-level colorful instances with a zero bottom radius
// whose top-level centers must come from `restriction`, a set pairwise more
// than 2 r_1 apart. Top-level balls of the witness are centered on candidates
// at radius r_1, bottom-level balls have radius 0.
WsResult solve_ws(const ColorfulInstance& instance, const CenterRestriction& restriction);

}  // namespace nukc
