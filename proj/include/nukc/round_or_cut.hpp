#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nukc/core.hpp"
#include "nukc/lp.hpp"

namespace nukc {

// cov_i(v) for levels i and points v, flattened level-major.
class CoverageVector {
 public:
  CoverageVector(int levels, int points) : levels_(levels), points_(points), values_(static_cast<std::size_t>(levels) * points, 0.0) {}
  CoverageVector(int levels, int points, std::vector<double> values);

  int levels() const { return levels_; }
  int points() const { return points_; }
  int dimension() const { return levels_ * points_; }
  int index(int level, PointId v) const { return level * points_ + v; }
  double at(int level, PointId v) const { return values_[index(level, v)]; }
  double& at(int level, PointId v) { return values_[index(level, v)]; }
  const std::vector<double>& values() const { return values_; }

  // Integral coverage of a solution: each point is credited to the first
  // level whose balls reach it.
  static CoverageVector of_solution(const RobustInstance& instance, const Solution& solution);

 private:
  int levels_;
  int points_;
  std::vector<double> values_;
};

struct HsResult {
  PointSet reps;
  std::vector<PointSet> children;
  std::vector<int> owner;  // owner[x] indexes reps
};

// Greedy by descending priority over the unassigned points: the top point
// becomes a representative and takes every unassigned point within `radius`.
HsResult hs(const MetricSpace& space, double radius, std::span<const double> priority);

// Height-t forest. Level 0 holds the roots; nodes[i][j] is a point id.
struct FirefighterInstance {
  std::vector<PointSet> nodes;
  std::vector<std::vector<int>> parent;     // parent[i][j] indexes nodes[i-1]; -1 on level 0
  std::vector<std::vector<PointSet>> children;  // HS children of each node at its level
  std::vector<Weight> leaf_weight;          // per node of the last level
  std::vector<int> budgets;
  std::vector<double> reach;                // alpha_i * r_i

  int levels() const { return static_cast<int>(nodes.size()); }
  // Index of the level-`to` ancestor of node j at level `from` (to <= from).
  int ancestor(int from, int j, int to) const;
};

FirefighterInstance cgk_build(const RobustInstance& instance, std::span<const double> alphas,
                              const CoverageVector& cov);

struct YAssignment {
  std::vector<std::vector<double>> values;  // raw, may be negative below the roots

  double level_sum(int level) const;
};

YAssignment compute_y(const FirefighterInstance& forest, const CoverageVector& cov);

struct SparseLp {
  LinearProgram lp;
  std::vector<std::pair<int, int>> var_node;  // (level, index) of each variable
};

// Budgeted forest LP: top level limited to k_1 - t, level i to k_i, and the
// ancestor sum of every leaf capped at 1. Nodes without leaves are omitted.
SparseLp build_sparse_lp(const FirefighterInstance& forest);

struct Case1Rounding {
  Solution solution;
  LpResult lp;
  int fractional = 0;
};

// Solves the sparse LP at a vertex and opens every node at value 1 plus the
// root of every fractional node. Radii are the smallest that cover every leaf
// cluster below an opened node.
Case1Rounding round_sparse_lp(const RobustInstance& instance, const FirefighterInstance& forest);

enum class CutKind { kBox, kCoverage, kPointSum, kBudget, kTopBudget };

const char* cut_kind_name(CutKind kind);

struct Cut {
  Halfspace halfspace;
  CutKind kind = CutKind::kCoverage;
};

struct Residual {
  RobustInstance instance;
  PointSet far_centers;
  PointSet removed;
};

struct RoundedOutcome {
  Solution solution;
  int fractional = 0;
};

struct ResidualOutcome {
  std::vector<Residual> residuals;
  PointSet top_nodes;
  double top_sum = 0.0;
};

using OracleOutcome = std::variant<RoundedOutcome, ResidualOutcome, Cut>;

struct OracleConfig {
  // Linear checks only cut when violated by more than this margin.
  double tolerance = 0.0;
  // Enumerate only far centers more than r_1 from every root.
  bool prune_far_centers = false;
};

// Margin that keeps Case-1 roundings at full coverage for this instance.
double default_oracle_tolerance(const RobustInstance& instance);

inline constexpr double kTopAlpha = 6.0;
inline constexpr double kLowerAlpha = 2.0;

std::vector<double> cgk_alphas(int levels);

OracleOutcome separation_oracle(const RobustInstance& instance, const CoverageVector& cov, const OracleConfig& config);

using WsSolver = std::function<std::optional<Solution>(const RobustInstance&)>;

struct TraceRecord {
  long iteration = 0;
  std::string query_hash;
  std::string outcome;
  std::optional<Cut> cut;
};

struct LoopConfig {
  double epsilon = 1e-6;
  long iteration_cap = 0;  // 0 selects 4 D^2 (ln D + ln 1/epsilon)
  int threads = 1;
  bool prune_far_centers = false;
  double tolerance = 0.0;  // 0 selects default_oracle_tolerance
  bool record_cuts = false;
  std::function<void(const TraceRecord&)> trace;
};

enum class LoopStatus { kSolved, kInfeasible, kIterationCap };

struct RecordedCut {
  Cut cut;
  std::vector<double> query;
  Eigen::VectorXd center;
};

struct LoopResult {
  LoopStatus status = LoopStatus::kInfeasible;
  std::optional<Solution> solution;
  std::string route;  // "trivial", "rounded" or "residual"
  long iterations = 0;
  long iteration_cap = 0;
  long oracle_calls = 0;
  long ws_calls = 0;
  std::vector<RecordedCut> cuts;
};

long default_iteration_cap(int dimension, double epsilon);

LoopResult ellipsoid_loop(const RobustInstance& instance, const WsSolver& ws_solver, const LoopConfig& config);

}  // namespace nukc
