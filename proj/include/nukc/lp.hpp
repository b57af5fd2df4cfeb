#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nukc {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x subject to the constraints and x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kPivotTol = 1e-10;

// Two-phase dense tableau simplex with Bland's rule. Optimal answers are basic
// feasible solutions.
LpResult simplex_vertex_solve(const LinearProgram& lp);

// True when the tight constraints at x (rows and x_j = 0 bounds) have full
// column rank, i.e. x is a vertex of the feasible region.
bool is_vertex(const LinearProgram& lp, std::span<const double> x, double tol = kFeasibilityTol);

struct Halfspace {
  Eigen::VectorXd normal;
  double offset = 0.0;  // normal . x <= offset

  double violation(const Eigen::VectorXd& x) const { return normal.dot(x) - offset; }
};

// E = { x : (x - center)^T shape^{-1} (x - center) <= 1 }.
struct EllipsoidState {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  long iterations = 0;
  double log_det = 0.0;  // log det(shape), tracked through the update formula

  int dimension() const { return static_cast<int>(center.size()); }
  // log(volume(E)), including the unit-ball constant.
  double log_volume() const;
};

EllipsoidState make_ball(const Eigen::VectorXd& center, double radius);

// Central cut through the center along the halfspace normal. Requires the
// halfspace to be violated at the center.
EllipsoidState ellipsoid_step(const EllipsoidState& state, const Halfspace& cut);

// Smallest ellipsoid containing state ∩ {normal . x <= offset}, cutting at
// depth violation / sqrt(a^T P a). Empty when the ellipsoid misses the
// halfspace. Requires the halfspace to be violated at the center.
std::optional<EllipsoidState> ellipsoid_deep_step(const EllipsoidState& state, const Halfspace& keep);

}  // namespace nukc
