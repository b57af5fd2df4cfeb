#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "nukc/core.hpp"

namespace nukc::testing {

inline MetricSpace line(std::vector<double> xs) {
  std::vector<std::vector<double>> coords;
  for (double x : xs) coords.push_back({x});
  return MetricSpace::from_points(std::move(coords), Norm::kL1);
}

inline MetricSpace random_plane(std::mt19937_64& rng, int n, int box) {
  std::uniform_int_distribution<int> c(0, box);
  std::vector<std::vector<double>> coords;
  for (int i = 0; i < n; ++i) coords.push_back({static_cast<double>(c(rng)), static_cast<double>(c(rng))});
  return MetricSpace::from_points(std::move(coords), Norm::kL1);
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<Weight> random_weights(std::mt19937_64& rng, int n, int lo, int hi) {
  std::vector<Weight> w(n);
  for (auto& x : w) x = uniform(rng, lo, hi);
  return w;
}

inline PointSet all_points(int n) {
  PointSet v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Calls fn on every subset of `pool` with exactly `size` elements.
inline void combinations(const PointSet& pool, int size, const std::function<void(const PointSet&)>& fn) {
  PointSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == size) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Coverage recomputed from scratch, independent of the library's verifier.
inline std::vector<char> naive_cover(const MetricSpace& d, const Solution& s) {
  std::vector<char> hit(d.size(), 0);
  for (PointId x = 0; x < d.size(); ++x) {
    for (const auto& level : s.levels) {
      for (PointId c : level.centers) {
        if (d.distance(c, x) <= level.radius) hit[x] = 1;
      }
    }
  }
  return hit;
}

inline Weight naive_weight(const std::vector<char>& hit, const WeightFn& w) {
  Weight s = 0;
  for (std::size_t p = 0; p < hit.size(); ++p) s += hit[p] ? w[static_cast<PointId>(p)] : 0;
  return s;
}

// Independent brute-force feasibility for robust instances at dilation 1:
// every tuple with |S_i| <= k_i, no bitmasks, no shared code.
inline bool naive_robust_feasible(const RobustInstance& inst) {
  const int t = inst.levels();
  const PointSet all = all_points(inst.space.size());
  Solution s;
  s.levels.resize(t);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == t) {
      if (inst.restriction) {
        for (PointId c : s.levels[inst.restriction->level].centers) {
          const auto& y = inst.restriction->candidates;
          if (std::find(y.begin(), y.end(), c) == y.end()) return false;
        }
      }
      return naive_weight(naive_cover(inst.space, s), inst.weight) >= inst.target;
    }
    s.levels[i].radius = inst.radii[i];
    const int k = std::min(inst.budgets[i], inst.space.size());
    bool found = false;
    for (int size = 0; size <= k && !found; ++size) {
      combinations(all, size, [&](const PointSet& c) {
        if (found) return;
        s.levels[i].centers = c;
        found = rec(i + 1);
      });
    }
    return found;
  };
  return rec(0);
}

}  // namespace nukc::testing
