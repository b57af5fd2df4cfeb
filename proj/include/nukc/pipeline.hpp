#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nukc/core.hpp"
#include "nukc/round_or_cut.hpp"

namespace nukc {

// Smallest merge ratio for which every instance with four merged levels
// satisfies the separation needed by the well-separated solver:
// 1 >= 26 / b + 81 / b^2 + 212 / b^3.
double default_beta();

// Worst-case realized radius over prescribed radius for instances whose
// consecutive radii are at least `beta` apart: 23 + 72 / beta + 192 / beta^2.
double composed_constant(double beta);

struct PipelineConfig {
  double beta = default_beta();
  double epsilon = 1e-6;
  long iteration_cap = 0;
  int threads = 1;
  bool prune_far_centers = false;
  std::function<void(const TraceRecord&)> trace;
};

struct StageRecord {
  std::string name;
  std::string transform;
  double millis = 0.0;
};

struct DilationLedger {
  std::vector<StageRecord> stages;
  std::vector<double> merged_radii;            // after merging and padding to four levels
  std::vector<double> bound_radius;            // per original level
  std::vector<double> realized_radius;         // per original level
  std::vector<double> realized_dilation;       // per original level
  double composed_constant = 0.0;              // C(beta) for the merged instance
  std::string route;
  long iterations = 0;
  long iteration_cap = 0;
  long ws_calls = 0;
};

enum class PipelineStatus { kSolved, kInfeasible, kIterationCap };

struct PipelineResult {
  PipelineStatus status = PipelineStatus::kInfeasible;
  std::optional<Solution> solution;
  DilationLedger ledger;
};

// Per-level realized radius bounds for merged radii (R_1..R_4), four levels.
std::array<double, 4> composed_bounds(const std::array<double, 4>& merged);

// Decides a three-level robust instance whose top centers are restricted to a
// set more than 2 r''_1 apart, where r''_1 is the top radius after the
// colorful and self-coverage reductions. Returns a verified solution at
// dilated radii, or nothing when no split admits a solution.
std::optional<Solution> ws_robust_solve(const RobustInstance& instance);

PipelineResult solve_4nukc(const NukcInstance& instance, const PipelineConfig& config = {});

// Robust instance with at most three levels, through the round-or-cut loop.
PipelineResult solve_robust(const RobustInstance& instance, const PipelineConfig& config = {});

// Colorful two-level instance with a center restriction: self-coverage
// reduction followed by the exact well-separated solver.
std::optional<Solution> solve_colorful(const ColorfulInstance& instance);

}  // namespace nukc
