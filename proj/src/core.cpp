#include "nukc/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace nukc {

MetricSpace MetricSpace::from_matrix(const std::vector<std::vector<double>>& d) {
  MetricSpace space;
  const int n = static_cast<int>(d.size());
  auto flat = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) * n);
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(d[p].size()) != n) {
      throw InputError(fmt::format("distance matrix row {} has {} entries, expected {}", p, d[p].size(), n));
    }
    for (int q = 0; q < n; ++q) {
      const double v = d[p][q];
      if (!std::isfinite(v) || v < 0) {
        throw InputError(fmt::format("distance d({},{}) = {} is not a finite nonnegative number", p, q, v));
      }
      (*flat)[static_cast<std::size_t>(p) * n + q] = v;
    }
  }
  space.n_ = n;
  space.dist_ = std::move(flat);
  return space;
}

MetricSpace MetricSpace::from_points(std::vector<std::vector<double>> coords, Norm norm) {
  const int n = static_cast<int>(coords.size());
  const std::size_t dim = n == 0 ? 0 : coords[0].size();
  for (const auto& c : coords) {
    if (c.size() != dim) throw InputError("coordinate vectors have inconsistent dimensions");
    for (double v : c) {
      if (!std::isfinite(v)) throw InputError("coordinates must be finite");
    }
  }
  auto flat = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) * n, 0.0);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      double acc = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = coords[p][k] - coords[q][k];
        acc += norm == Norm::kL1 ? std::abs(diff) : diff * diff;
      }
      if (norm == Norm::kL2) acc = std::sqrt(acc);
      (*flat)[static_cast<std::size_t>(p) * n + q] = acc;
      (*flat)[static_cast<std::size_t>(q) * n + p] = acc;
    }
  }
  MetricSpace space;
  space.n_ = n;
  space.dist_ = std::move(flat);
  space.coords_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(coords));
  space.norm_ = norm;
  return space;
}

double MetricSpace::distance(PointId p, PointId q) const {
  if (!contains(p) || !contains(q)) throw InputError(fmt::format("unknown point id in d({},{})", p, q));
  return (*this)(p, q);
}

MetricSpace MetricSpace::subspace(std::span<const PointId> ids) const {
  const int m = static_cast<int>(ids.size());
  auto flat = std::make_shared<std::vector<double>>(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    if (!contains(ids[a])) throw InputError(fmt::format("subspace id {} out of range", ids[a]));
    for (int b = 0; b < m; ++b) (*flat)[static_cast<std::size_t>(a) * m + b] = (*this)(ids[a], ids[b]);
  }
  MetricSpace space;
  space.n_ = m;
  space.dist_ = std::move(flat);
  return space;
}

std::vector<std::string> MetricSpace::violations(bool check_triangle) const {
  std::vector<std::string> out;
  const MetricSpace& d = *this;
  for (int p = 0; p < n_; ++p) {
    if (d(p, p) != 0) out.push_back(fmt::format("d({0},{0}) = {1} is not zero", p, d(p, p)));
    for (int q = p + 1; q < n_; ++q) {
      if (d(p, q) != d(q, p)) out.push_back(fmt::format("asymmetric distance between {} and {}", p, q));
    }
  }
  if (check_triangle) {
    for (int p = 0; p < n_; ++p)
      for (int q = 0; q < n_; ++q)
        for (int r = 0; r < n_; ++r)
          if (d(p, q) > d(p, r) + d(r, q)) {
            out.push_back(fmt::format("triangle inequality fails for ({},{}) via {}", p, q, r));
            return out;
          }
  }
  return out;
}

WeightFn::WeightFn(std::vector<Weight> values) : values_(std::move(values)) {
  for (Weight w : values_) {
    if (w < 0) throw InputError("weights must be nonnegative");
    total_ += w;
  }
}

WeightFn WeightFn::indicator(int n, std::span<const PointId> support) {
  std::vector<Weight> v(n, 0);
  for (PointId p : support) {
    if (p < 0 || p >= n) throw InputError(fmt::format("indicator support id {} out of range", p));
    v[p] = 1;
  }
  return WeightFn(std::move(v));
}

Weight WeightFn::sum(std::span<const PointId> points) const {
  Weight s = 0;
  for (PointId p : points) s += values_[p];
  return s;
}

CenterRestriction make_restriction(const MetricSpace& space, PointSet candidates, double separation) {
  if (separation < 0) throw InputError("restriction separation must be nonnegative");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    if (!space.contains(candidates[a])) throw InputError(fmt::format("restriction id {} out of range", candidates[a]));
    for (std::size_t b = 0; b < a; ++b) {
      if (!(space(candidates[a], candidates[b]) > separation)) {
        throw InputError(fmt::format("restriction points {} and {} are only {} apart (need > {})", candidates[b],
                                     candidates[a], space(candidates[a], candidates[b]), separation));
      }
    }
  }
  return CenterRestriction{std::move(candidates), 0, separation};
}

PointSet ball_members(const MetricSpace& space, PointId center, double radius) {
  if (!space.contains(center)) throw InputError(fmt::format("unknown center id {}", center));
  PointSet out;
  for (PointId q = 0; q < space.size(); ++q) {
    if (space(center, q) <= radius) out.push_back(q);
  }
  return out;
}

std::vector<char> covered_mask(const MetricSpace& space, const Solution& solution) {
  std::vector<char> covered(space.size(), 0);
  for (const auto& level : solution.levels) {
    for (PointId c : level.centers) {
      for (PointId q = 0; q < space.size(); ++q) {
        if (space(c, q) <= level.radius) covered[q] = 1;
      }
    }
  }
  return covered;
}

namespace {

// Shared checks: ids, budgets, dilation, restriction. Returns the coverage mask
// or an empty vector when ids are invalid.
std::vector<char> check_common(const MetricSpace& space, std::span<const double> radii, std::span<const int> budgets,
                               const std::optional<CenterRestriction>& restriction, const Solution& solution,
                               double dilation_limit, VerificationReport& report) {
  const int t = static_cast<int>(radii.size());
  if (solution.level_count() != t) {
    throw InputError(fmt::format("solution has {} levels, instance has {}", solution.level_count(), t));
  }
  report.dilation.assign(t, 0.0);
  for (int i = 0; i < t; ++i) {
    const auto& level = solution.levels[i];
    for (PointId c : level.centers) {
      if (!space.contains(c)) {
        report.ids_ok = false;
        report.failures.push_back(fmt::format("level {} center {} is not a point", i, c));
      }
    }
    if (!std::isfinite(level.radius) || level.radius < 0) {
      report.radii_ok = false;
      report.failures.push_back(fmt::format("level {} radius {} is invalid", i, level.radius));
    }
    if (static_cast<int>(level.centers.size()) > budgets[i]) {
      report.budgets_ok = false;
      report.failures.push_back(fmt::format("level {} uses {} centers, budget {}", i, level.centers.size(), budgets[i]));
    }
    if (!level.centers.empty()) {
      double a = 0.0;
      if (radii[i] > 0) {
        a = level.radius / radii[i];
      } else if (level.radius > 0) {
        a = kUnlimited;
      }
      report.dilation[i] = a;
      report.max_dilation = std::max(report.max_dilation, a);
      if (a > dilation_limit) {
        report.radii_ok = false;
        report.failures.push_back(fmt::format("level {} dilation {} exceeds {}", i, a, dilation_limit));
      }
    }
  }
  if (restriction) {
    const int lvl = restriction->level;
    if (lvl < t) {
      for (PointId c : solution.levels[lvl].centers) {
        if (!std::binary_search(restriction->candidates.begin(), restriction->candidates.end(), c)) {
          report.restriction_ok = false;
          report.failures.push_back(fmt::format("level {} center {} is outside the candidate set", lvl, c));
        }
      }
    }
  }
  if (!report.ids_ok) {
    report.coverage_ok = false;
    return {};
  }
  auto covered = covered_mask(space, solution);
  report.covered_points = static_cast<int>(std::count(covered.begin(), covered.end(), 1));
  return covered;
}

Weight covered_sum(const WeightFn& w, const std::vector<char>& covered) {
  Weight s = 0;
  for (std::size_t p = 0; p < covered.size(); ++p) {
    if (covered[p]) s += w[static_cast<PointId>(p)];
  }
  return s;
}

}  // namespace

VerificationReport verify_solution(const NukcInstance& instance, const Solution& solution, double dilation_limit) {
  VerificationReport report;
  auto covered = check_common(instance.space, instance.radii, instance.budgets, std::nullopt, solution,
                              dilation_limit, report);
  if (!report.ids_ok) return report;
  report.covered_weight = report.covered_points;
  if (report.covered_points < instance.space.size()) {
    report.coverage_ok = false;
    report.failures.push_back(
        fmt::format("{} of {} points covered", report.covered_points, instance.space.size()));
  }
  return report;
}

VerificationReport verify_solution(const RobustInstance& instance, const Solution& solution, double dilation_limit) {
  VerificationReport report;
  auto covered = check_common(instance.space, instance.radii, instance.budgets, instance.restriction, solution,
                              dilation_limit, report);
  if (!report.ids_ok) return report;
  report.covered_weight = covered_sum(instance.weight, covered);
  if (report.covered_weight < instance.target) {
    report.coverage_ok = false;
    report.failures.push_back(fmt::format("covered weight {} below target {}", report.covered_weight, instance.target));
  }
  return report;
}

VerificationReport verify_solution(const ColorfulInstance& instance, const Solution& solution,
                                   double dilation_limit) {
  VerificationReport report;
  auto covered = check_common(instance.space, instance.radii, instance.budgets, instance.restriction, solution,
                              dilation_limit, report);
  if (!report.ids_ok) return report;
  report.covered_red = covered_sum(instance.red, covered);
  report.covered_blue = covered_sum(instance.blue, covered);
  report.covered_weight = report.covered_red + report.covered_blue;
  if (report.covered_red < instance.red_target) {
    report.coverage_ok = false;
    report.failures.push_back(fmt::format("red coverage {} below {}", report.covered_red, instance.red_target));
  }
  if (report.covered_blue < instance.blue_target) {
    report.coverage_ok = false;
    report.failures.push_back(fmt::format("blue coverage {} below {}", report.covered_blue, instance.blue_target));
  }
  return report;
}

VerificationReport verify_solution(const Instance& instance, const Solution& solution, double dilation_limit) {
  return std::visit([&](const auto& inst) { return verify_solution(inst, solution, dilation_limit); }, instance);
}

namespace {

void check_levels(std::span<const double> radii, std::span<const int> budgets, std::vector<std::string>& out) {
  if (radii.empty()) out.emplace_back("instance has no levels");
  if (radii.size() != budgets.size()) out.emplace_back("radii and budgets differ in length");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || radii[i] < 0) out.push_back(fmt::format("radius {} is invalid", i));
    if (i > 0 && radii[i] > radii[i - 1]) {
      out.emplace_back("radii not nonincreasing");
      break;
    }
  }
  for (int k : budgets) {
    if (k < 0) {
      out.emplace_back("negative budget");
      break;
    }
  }
}

void check_weight(const MetricSpace& space, const WeightFn& w, Weight target, const char* name,
                  std::vector<std::string>& out) {
  if (w.size() != space.size()) out.push_back(fmt::format("{} weights have {} entries for {} points", name, w.size(), space.size()));
  if (target < 0) out.push_back(fmt::format("{} target is negative", name));
  if (target > w.total()) out.push_back(fmt::format("{} target exceeds total weight", name));
}

void check_restriction(const MetricSpace& space, const std::optional<CenterRestriction>& r,
                       std::vector<std::string>& out) {
  if (!r) return;
  try {
    make_restriction(space, r->candidates, r->separation);
  } catch (const InputError& e) {
    out.emplace_back(e.what());
  }
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& instance, bool check_triangle) {
  std::vector<std::string> out;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        check_levels(inst.radii, inst.budgets, out);
        auto metric = inst.space.violations(check_triangle);
        out.insert(out.end(), metric.begin(), metric.end());
        if constexpr (std::is_same_v<T, RobustInstance>) {
          check_weight(inst.space, inst.weight, inst.target, "robust", out);
          check_restriction(inst.space, inst.restriction, out);
        } else if constexpr (std::is_same_v<T, ColorfulInstance>) {
          check_weight(inst.space, inst.red, inst.red_target, "red", out);
          check_weight(inst.space, inst.blue, inst.blue_target, "blue", out);
          check_restriction(inst.space, inst.restriction, out);
        }
      },
      instance);
  return out;
}

namespace {

RadiusMergeMap merge_groups(std::span<const double> radii, double beta) {
  if (!(beta > 1)) throw InputError("merge threshold must exceed 1");
  RadiusMergeMap map;
  for (int i = 0; i < static_cast<int>(radii.size()); ++i) {
    if (!map.groups.empty()) {
      const double top = radii[map.groups.back().front()];
      if (radii[i] > 0 && top < beta * radii[i]) {
        map.groups.back().push_back(i);
        continue;
      }
    }
    map.groups.push_back({i});
  }
  return map;
}

template <typename Inst>
std::pair<Inst, RadiusMergeMap> merge_impl(const Inst& instance, double beta) {
  RadiusMergeMap map = merge_groups(instance.radii, beta);
  Inst merged = instance;
  merged.radii.clear();
  merged.budgets.clear();
  for (const auto& g : map.groups) {
    merged.radii.push_back(instance.radii[g.front()]);
    int k = 0;
    for (int j : g) k += instance.budgets[j];
    merged.budgets.push_back(k);
  }
  return {std::move(merged), std::move(map)};
}

}  // namespace

std::pair<NukcInstance, RadiusMergeMap> merge_close_radii(const NukcInstance& instance, double beta) {
  return merge_impl(instance, beta);
}

std::pair<RobustInstance, RadiusMergeMap> merge_close_radii(const RobustInstance& instance, double beta) {
  return merge_impl(instance, beta);
}

Solution expand_merged_solution(const RadiusMergeMap& map, std::span<const int> original_budgets,
                                const Solution& merged) {
  if (merged.level_count() != static_cast<int>(map.groups.size())) {
    throw InputError("merged solution does not match the merge map");
  }
  std::size_t total_levels = 0;
  for (const auto& g : map.groups) total_levels += g.size();
  Solution out;
  out.levels.resize(total_levels);
  for (std::size_t g = 0; g < map.groups.size(); ++g) {
    const auto& level = merged.levels[g];
    std::size_t next = 0;
    for (int j : map.groups[g]) {
      out.levels[j].radius = level.radius;
      const std::size_t take =
          std::min(level.centers.size() - next, static_cast<std::size_t>(std::max(original_budgets[j], 0)));
      out.levels[j].centers.assign(level.centers.begin() + static_cast<std::ptrdiff_t>(next),
                                   level.centers.begin() + static_cast<std::ptrdiff_t>(next + take));
      next += take;
    }
    if (next < level.centers.size()) throw ContractViolation("merged level uses more centers than its group budget");
  }
  return out;
}

}  // namespace nukc
