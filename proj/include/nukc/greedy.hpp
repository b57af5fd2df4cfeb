#pragma once

#include <span>
#include <vector>

#include "nukc/core.hpp"

namespace nukc {

// Result of greedy weighted clustering. Position in `mega_points` is the
// insertion order; clusters[j] and weights[j] belong to mega_points[j].
struct GreedyOutput {
  PointSet mega_points;
  std::vector<PointSet> clusters;
  std::vector<Weight> weights;
  // cluster_of[p] is the index of the cluster holding p, or -1 if p is outside the domain.
  std::vector<int> cluster_of;

  PointSet domain;
  double radius = 0.0;
  double gamma = 1.0;
  WeightFn weight;

  int size() const { return static_cast<int>(mega_points.size()); }

  // Weight moved onto the mega-points: weights[j] at mega_points[j], 0 elsewhere.
  WeightFn migrated() const;
};

// Repeatedly picks the point q of the whole space maximizing the weight of the
// unclustered domain points within `radius` (among q that see at least one such
// point; smallest id on ties), and clusters the unclustered points within
// gamma * radius of q.
GreedyOutput greedy_clustering(const MetricSpace& space, std::span<const PointId> domain, double radius, double gamma,
                               const WeightFn& weight);

Weight first_k_weight(const GreedyOutput& output, int k);

}  // namespace nukc
