#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nukc/core.hpp"

namespace nukc {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteOptions {
  double dilation = 1.0;
  double tuple_budget = 1e7;
  bool stop_at_first_feasible = false;
  // Per-level candidate centers; an empty optional means every point. The
  // instance's own restriction is applied on top.
  std::vector<std::optional<PointSet>> level_candidates;
  // Colorful only: blue weight counts only when reached by a top-level ball or
  // sitting on a bottom-level center.
  bool structured = false;
};

struct BruteResult {
  bool feasible = false;
  Solution witness;
  Weight best_coverage = 0;
  double tuples = 0;
};

// Exhaustive search over center tuples, levels outer to inner, each level
// choosing exactly min(k_i, candidates) centers in lexicographic order. The
// witness maximizes covered weight among feasible tuples (or overall if none
// is feasible); earlier tuples win ties. Refuses instances beyond 64 points or
// the tuple budget.
BruteResult brute_solve(const Instance& instance, const BruteOptions& options = {});

// Every feasible center tuple (sizes up to each budget, duplicates of
// coverage-equivalent supersets included), at dilation 1. Intended for tiny
// instances.
std::vector<Solution> enumerate_feasible(const RobustInstance& instance, double tuple_budget = 1e7);

enum class PlantVariant { kNukc, kRobust, kColorful };

struct PlantParams {
  int n = 8;
  int levels = 2;
  int outliers = 0;
  int max_budget = 2;
  // When positive, consecutive radii are at least this ratio apart.
  double separation_ratio = 0.0;
  int bottom_radius_max = 3;
  int top_radius_max = 20;
};

struct PlantedInstance {
  Instance instance;
  Solution witness;
};

PlantedInstance plant_instance(std::uint64_t seed, PlantVariant variant, const PlantParams& params);

}  // namespace nukc
