#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nukc/errors.hpp"

namespace nukc {

using PointId = int;
using PointSet = std::vector<PointId>;
using Weight = std::int64_t;

enum class Norm { kL1, kL2 };

// Finite metric over points 0..n-1. Distances are materialized as a dense
// matrix shared between copies, so subspaces and instance copies are cheap.
class MetricSpace {
 public:
  MetricSpace() = default;

  static MetricSpace from_matrix(const std::vector<std::vector<double>>& d);
  static MetricSpace from_points(std::vector<std::vector<double>> coords, Norm norm);

  int size() const { return n_; }
  bool contains(PointId p) const { return p >= 0 && p < n_; }

  // Unchecked lookup for hot loops.
  double operator()(PointId p, PointId q) const { return (*dist_)[static_cast<std::size_t>(p) * n_ + q]; }
  // Checked lookup; throws InputError on unknown ids.
  double distance(PointId p, PointId q) const;

  // Matrix form restricted to `ids`; point j of the result is ids[j].
  MetricSpace subspace(std::span<const PointId> ids) const;

  bool has_coords() const { return coords_ != nullptr; }
  const std::vector<std::vector<double>>& coords() const { return *coords_; }
  Norm norm() const { return norm_; }

  std::vector<std::string> violations(bool check_triangle) const;

 private:
  int n_ = 0;
  std::shared_ptr<const std::vector<double>> dist_ = std::make_shared<std::vector<double>>();
  std::shared_ptr<const std::vector<std::vector<double>>> coords_;
  Norm norm_ = Norm::kL1;
};

// Nonnegative integer weights indexed by point id.
class WeightFn {
 public:
  WeightFn() = default;
  explicit WeightFn(std::vector<Weight> values);

  static WeightFn unit(int n) { return WeightFn(std::vector<Weight>(n, 1)); }
  static WeightFn zero(int n) { return WeightFn(std::vector<Weight>(n, 0)); }
  static WeightFn indicator(int n, std::span<const PointId> support);

  int size() const { return static_cast<int>(values_.size()); }
  Weight operator[](PointId p) const { return values_[p]; }
  Weight total() const { return total_; }
  Weight sum(std::span<const PointId> points) const;
  const std::vector<Weight>& values() const { return values_; }

  friend bool operator==(const WeightFn& a, const WeightFn& b) { return a.values_ == b.values_; }

 private:
  std::vector<Weight> values_;
  Weight total_ = 0;
};

// Top-level centers must come from `candidates`, whose points are pairwise
// more than `separation` apart.
struct CenterRestriction {
  PointSet candidates;
  int level = 0;
  double separation = 0.0;
};

// Validates the separation claim and sorts the candidate set.
CenterRestriction make_restriction(const MetricSpace& space, PointSet candidates, double separation);

struct NukcInstance {
  MetricSpace space;
  std::vector<double> radii;
  std::vector<int> budgets;

  int levels() const { return static_cast<int>(radii.size()); }
};

struct RobustInstance {
  MetricSpace space;
  std::vector<double> radii;
  std::vector<int> budgets;
  WeightFn weight;
  Weight target = 0;
  std::optional<CenterRestriction> restriction;

  int levels() const { return static_cast<int>(radii.size()); }
};

struct ColorfulInstance {
  MetricSpace space;
  std::vector<double> radii;
  std::vector<int> budgets;
  WeightFn red;
  WeightFn blue;
  Weight red_target = 0;
  Weight blue_target = 0;
  std::optional<CenterRestriction> restriction;

  int levels() const { return static_cast<int>(radii.size()); }
};

using Instance = std::variant<NukcInstance, RobustInstance, ColorfulInstance>;

struct LevelAssignment {
  PointSet centers;
  double radius = 0.0;

  friend bool operator==(const LevelAssignment&, const LevelAssignment&) = default;
};

struct Solution {
  std::vector<LevelAssignment> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
  friend bool operator==(const Solution&, const Solution&) = default;
};

struct VerificationReport {
  // Realized radius over prescribed radius. Levels without centers report 0;
  // a positive radius on a zero-radius level reports +infinity.
  std::vector<double> dilation;
  double max_dilation = 0.0;
  Weight covered_weight = 0;
  Weight covered_red = 0;
  Weight covered_blue = 0;
  int covered_points = 0;
  bool ids_ok = true;
  bool budgets_ok = true;
  bool radii_ok = true;
  bool coverage_ok = true;
  bool restriction_ok = true;
  std::vector<std::string> failures;

  bool pass() const { return ids_ok && budgets_ok && radii_ok && coverage_ok && restriction_ok; }
};

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

PointSet ball_members(const MetricSpace& space, PointId center, double radius);

// Marks every point lying in some ball of `solution`.
std::vector<char> covered_mask(const MetricSpace& space, const Solution& solution);

VerificationReport verify_solution(const NukcInstance& instance, const Solution& solution,
                                   double dilation_limit = kUnlimited);
VerificationReport verify_solution(const RobustInstance& instance, const Solution& solution,
                                   double dilation_limit = kUnlimited);
VerificationReport verify_solution(const ColorfulInstance& instance, const Solution& solution,
                                   double dilation_limit = kUnlimited);
VerificationReport verify_solution(const Instance& instance, const Solution& solution,
                                   double dilation_limit = kUnlimited);

std::vector<std::string> validate_instance(const Instance& instance, bool check_triangle = false);

// groups[g] lists the original levels folded into merged level g.
struct RadiusMergeMap {
  std::vector<std::vector<int>> groups;
};

std::pair<NukcInstance, RadiusMergeMap> merge_close_radii(const NukcInstance& instance, double beta);
std::pair<RobustInstance, RadiusMergeMap> merge_close_radii(const RobustInstance& instance, double beta);

// Re-expands a solution of the merged instance onto the original levels. The
// centers of merged level g fill the original levels of the group in order,
// each up to its own budget, and keep the merged realized radius.
Solution expand_merged_solution(const RadiusMergeMap& map, std::span<const int> original_budgets,
                                const Solution& merged);

}  // namespace nukc
