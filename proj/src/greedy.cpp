#include "nukc/greedy.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nukc {

WeightFn GreedyOutput::migrated() const {
  std::vector<Weight> w(cluster_of.size(), 0);
  for (int j = 0; j < size(); ++j) w[mega_points[j]] = weights[j];
  return WeightFn(std::move(w));
}

GreedyOutput greedy_clustering(const MetricSpace& space, std::span<const PointId> domain, double radius, double gamma,
                               const WeightFn& weight) {
  const int n = space.size();
  if (radius < 0) throw InputError("clustering radius must be nonnegative");
  if (gamma < 1) throw InputError("clustering gamma must be at least 1");
  if (weight.size() != n) throw InputError("weight function does not match the space");

  std::vector<char> open(n, 0);
  for (PointId p : domain) {
    if (!space.contains(p)) throw InputError(fmt::format("domain id {} out of range", p));
    open[p] = 1;
  }
  for (PointId p = 0; p < n; ++p) {
    if (!open[p] && weight[p] != 0) throw InputError(fmt::format("weight is nonzero at {} outside the domain", p));
  }

  GreedyOutput out;
  out.domain.assign(domain.begin(), domain.end());
  std::sort(out.domain.begin(), out.domain.end());
  out.domain.erase(std::unique(out.domain.begin(), out.domain.end()), out.domain.end());
  out.radius = radius;
  out.gamma = gamma;
  out.weight = weight;
  out.cluster_of.assign(n, -1);

  int remaining = static_cast<int>(out.domain.size());
  const double reach = gamma * radius;
  while (remaining > 0) {
    PointId best = -1;
    Weight best_weight = -1;
    for (PointId q = 0; q < n; ++q) {
      bool sees = false;
      Weight w = 0;
      for (PointId u : out.domain) {
        if (open[u] && space(q, u) <= radius) {
          sees = true;
          w += weight[u];
        }
      }
      if (sees && w > best_weight) {
        best = q;
        best_weight = w;
      }
    }
    PointSet cluster;
    Weight mass = 0;
    const int index = out.size();
    for (PointId u : out.domain) {
      if (open[u] && space(best, u) <= reach) {
        open[u] = 0;
        cluster.push_back(u);
        mass += weight[u];
        out.cluster_of[u] = index;
      }
    }
    remaining -= static_cast<int>(cluster.size());
    out.mega_points.push_back(best);
    out.clusters.push_back(std::move(cluster));
    out.weights.push_back(mass);
  }
  return out;
}

Weight first_k_weight(const GreedyOutput& output, int k) {
  Weight s = 0;
  const int upto = std::min(std::max(k, 0), output.size());
  for (int j = 0; j < upto; ++j) s += output.weights[j];
  return s;
}

}  // namespace nukc
