#include "nukc/lp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "nukc/errors.hpp"

namespace nukc {

namespace {

constexpr double kCostTol = 1e-9;

class Tableau {
 public:
  Tableau(int rows, int cols) : cols_(cols), rows_(rows), a_(rows, std::vector<double>(cols, 0.0)), b_(rows, 0.0), basis_(rows, -1) {}

  std::vector<std::vector<double>>& a() { return a_; }
  std::vector<double>& b() { return b_; }
  std::vector<int>& basis() { return basis_; }
  int rows() const { return rows_; }
  int pivots() const { return pivots_; }

  // Maximizes cost . x over the current basis using only columns with
  // allowed[j]. Returns false when unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<char>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols_ && enter < 0; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        double reduced = cost[j];
        for (int i = 0; i < rows_; ++i) reduced -= cost[basis_[i]] * a_[i][j];
        if (reduced > kCostTol) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      bool tiny = false;
      for (int i = 0; i < rows_; ++i) {
        const double coef = a_[i][enter];
        if (coef > kPivotTol) {
          const double ratio = b_[i] / coef;
          if (ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        } else if (coef > 1e-14) {
          tiny = true;
        }
      }
      if (leave < 0) {
        if (tiny) throw NumericalError("simplex: entering column has only sub-tolerance pivots");
        return false;
      }
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    const double p = a_[row][col];
    if (std::abs(p) < kPivotTol) throw NumericalError(fmt::format("simplex: pivot {} below tolerance", p));
    for (double& v : a_[row]) v /= p;
    b_[row] /= p;
    a_[row][col] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = a_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) a_[i][j] -= f * a_[row][j];
      a_[i][col] = 0.0;
      b_[i] -= f * b_[row];
      if (std::abs(b_[i]) < 1e-13) b_[i] = 0.0;
    }
    basis_[row] = col;
    ++pivots_;
  }

  void drop_row(int row) {
    a_.erase(a_.begin() + row);
    b_.erase(b_.begin() + row);
    basis_.erase(basis_.begin() + row);
    --rows_;
  }

  bool is_basic(int j) const {
    for (int v : basis_) {
      if (v == j) return true;
    }
    return false;
  }

 private:
  int cols_;
  int rows_;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

}  // namespace

LpResult simplex_vertex_solve(const LinearProgram& lp) {
  const int n = lp.num_vars();
  const int m = static_cast<int>(lp.constraints.size());
  int slacks = 0;
  int artificials = 0;
  for (const auto& row : lp.constraints) {
    if (static_cast<int>(row.coeffs.size()) != n) throw InputError("constraint width does not match objective");
    for (double c : row.coeffs) {
      if (!std::isfinite(c)) throw InputError("nonfinite constraint coefficient");
    }
    Relation rel = row.relation;
    if (row.rhs < 0 && rel != Relation::kEqual) rel = rel == Relation::kLessEqual ? Relation::kGreaterEqual : Relation::kLessEqual;
    if (rel != Relation::kEqual) ++slacks;
    if (rel != Relation::kLessEqual) ++artificials;
  }
  const int cols = n + slacks + artificials;
  Tableau tab(m, cols);
  int next_slack = n;
  int next_art = n + slacks;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.constraints[i];
    const double sign = row.rhs < 0 ? -1.0 : 1.0;
    Relation rel = row.relation;
    if (sign < 0 && rel != Relation::kEqual) rel = rel == Relation::kLessEqual ? Relation::kGreaterEqual : Relation::kLessEqual;
    for (int j = 0; j < n; ++j) tab.a()[i][j] = sign * row.coeffs[j];
    tab.b()[i] = sign * row.rhs;
    if (rel == Relation::kLessEqual) {
      tab.a()[i][next_slack] = 1.0;
      tab.basis()[i] = next_slack++;
    } else {
      if (rel == Relation::kGreaterEqual) tab.a()[i][next_slack++] = -1.0;
      tab.a()[i][next_art] = 1.0;
      tab.basis()[i] = next_art++;
    }
  }

  LpResult result;
  std::vector<char> allowed(cols, 1);
  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (int j = n + slacks; j < cols; ++j) phase1[j] = -1.0;
    tab.optimize(phase1, allowed);
    double infeas = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[i] >= n + slacks) infeas += tab.b()[i];
    }
    if (infeas > kFeasibilityTol) {
      result.status = LpStatus::kInfeasible;
      result.pivots = tab.pivots();
      return result;
    }
    for (int i = 0; i < tab.rows();) {
      if (tab.basis()[i] < n + slacks) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < n + slacks && col < 0; ++j) {
        if (std::abs(tab.a()[i][j]) > kPivotTol && !tab.is_basic(j)) col = j;
      }
      if (col < 0) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (int j = n + slacks; j < cols; ++j) allowed[j] = 0;
  }

  std::vector<double> cost(cols, 0.0);
  for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
  if (!tab.optimize(cost, allowed)) {
    result.status = LpStatus::kUnbounded;
    result.pivots = tab.pivots();
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (int i = 0; i < tab.rows(); ++i) {
    const int v = tab.basis()[i];
    if (v < n) result.x[v] = std::abs(tab.b()[i]) < 1e-11 ? 0.0 : tab.b()[i];
  }
  for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];
  result.pivots = tab.pivots();
  return result;
}

bool is_vertex(const LinearProgram& lp, std::span<const double> x, double tol) {
  const int n = lp.num_vars();
  std::vector<Eigen::VectorXd> tight;
  for (const auto& row : lp.constraints) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * x[j];
    if (row.relation == Relation::kEqual || std::abs(lhs - row.rhs) <= tol) {
      tight.push_back(Eigen::Map<const Eigen::VectorXd>(row.coeffs.data(), n));
    }
  }
  for (int j = 0; j < n; ++j) {
    if (std::abs(x[j]) <= tol) tight.push_back(Eigen::VectorXd::Unit(n, j));
  }
  if (static_cast<int>(tight.size()) < n) return false;
  Eigen::MatrixXd mat(tight.size(), n);
  for (std::size_t r = 0; r < tight.size(); ++r) mat.row(static_cast<Eigen::Index>(r)) = tight[r].transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
  lu.setThreshold(1e-9);
  return lu.rank() == n;
}

double EllipsoidState::log_volume() const {
  const double dim = dimension();
  return 0.5 * log_det + 0.5 * dim * std::log(std::numbers::pi) - std::lgamma(0.5 * dim + 1.0);
}

EllipsoidState make_ball(const Eigen::VectorXd& center, double radius) {
  EllipsoidState s;
  s.center = center;
  const auto dim = center.size();
  s.shape = Eigen::MatrixXd::Identity(dim, dim) * radius * radius;
  s.log_det = static_cast<double>(dim) * 2.0 * std::log(radius);
  return s;
}

EllipsoidState ellipsoid_step(const EllipsoidState& state, const Halfspace& cut) {
  const int dim = state.dimension();
  if (cut.normal.size() != dim) throw InputError("cut dimension does not match the ellipsoid");
  if (!(cut.violation(state.center) > 0)) throw InputError("cut is not violated at the ellipsoid center");
  const Eigen::VectorXd pa = state.shape * cut.normal;
  const double apa = cut.normal.dot(pa);
  if (!(apa > 0) || !std::isfinite(apa)) throw NumericalError("ellipsoid shape lost positive definiteness");
  const Eigen::VectorXd dir = pa / std::sqrt(apa);

  EllipsoidState next;
  next.iterations = state.iterations + 1;
  if (dim == 1) {
    next.center = state.center - 0.5 * dir;
    next.shape = state.shape / 4.0;
    next.log_det = state.log_det - std::log(4.0);
    return next;
  }
  const double d = dim;
  next.center = state.center - dir / (d + 1.0);
  next.shape = (d * d / (d * d - 1.0)) * (state.shape - (2.0 / (d + 1.0)) * dir * dir.transpose());
  next.shape = 0.5 * (next.shape + next.shape.transpose()).eval();
  next.log_det = state.log_det + d * std::log(d * d / (d * d - 1.0)) + std::log((d - 1.0) / (d + 1.0));
  for (int i = 0; i < dim; ++i) {
    if (!(next.shape(i, i) > 0)) throw NumericalError("ellipsoid shape lost positive definiteness");
  }
  return next;
}

std::optional<EllipsoidState> ellipsoid_deep_step(const EllipsoidState& state, const Halfspace& keep) {
  const int dim = state.dimension();
  if (keep.normal.size() != dim) throw InputError("cut dimension does not match the ellipsoid");
  const double excess = keep.violation(state.center);
  if (!(excess > 0)) throw InputError("cut is not violated at the ellipsoid center");
  const Eigen::VectorXd pa = state.shape * keep.normal;
  const double apa = keep.normal.dot(pa);
  if (!(apa > 0) || !std::isfinite(apa)) throw NumericalError("ellipsoid shape lost positive definiteness");
  const double width = std::sqrt(apa);
  const double depth = excess / width;
  if (depth >= 1.0) return std::nullopt;
  const Eigen::VectorXd dir = pa / width;

  EllipsoidState next;
  next.iterations = state.iterations + 1;
  if (dim == 1) {
    next.center = state.center - 0.5 * (1.0 + depth) * dir;
    const double shrink = 0.25 * (1.0 - depth) * (1.0 - depth);
    next.shape = state.shape * shrink;
    next.log_det = state.log_det + std::log(shrink);
    return next;
  }
  const double d = dim;
  const double scale = d * d * (1.0 - depth * depth) / (d * d - 1.0);
  const double tau = 2.0 * (1.0 + d * depth) / ((d + 1.0) * (1.0 + depth));
  next.center = state.center - ((1.0 + d * depth) / (d + 1.0)) * dir;
  next.shape = scale * (state.shape - tau * dir * dir.transpose());
  next.shape = 0.5 * (next.shape + next.shape.transpose()).eval();
  next.log_det = state.log_det + d * std::log(scale) + std::log((d - 1.0) * (1.0 - depth) / ((d + 1.0) * (1.0 + depth)));
  for (int i = 0; i < dim; ++i) {
    if (!(next.shape(i, i) > 0)) throw NumericalError("ellipsoid shape lost positive definiteness");
  }
  return next;
}

}  // namespace nukc
