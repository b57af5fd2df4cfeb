#include "nukc/round_or_cut.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace nukc {

CoverageVector::CoverageVector(int levels, int points, std::vector<double> values)
    : levels_(levels), points_(points), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(levels) * points) throw InputError("coverage vector size mismatch");
}

CoverageVector CoverageVector::of_solution(const RobustInstance& instance, const Solution& solution) {
  const auto& d = instance.space;
  CoverageVector cov(instance.levels(), d.size());
  for (PointId v = 0; v < d.size(); ++v) {
    for (int i = 0; i < solution.level_count(); ++i) {
      const auto& level = solution.levels[i];
      const bool hit = std::any_of(level.centers.begin(), level.centers.end(),
                                   [&](PointId c) { return d(c, v) <= level.radius; });
      if (hit) {
        cov.at(i, v) = 1.0;
        break;
      }
    }
  }
  return cov;
}

HsResult hs(const MetricSpace& space, double radius, std::span<const double> priority) {
  const int n = space.size();
  if (static_cast<int>(priority.size()) != n) throw InputError("priority size does not match the space");
  PointSet order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](PointId a, PointId b) { return priority[a] > priority[b]; });
  HsResult out;
  out.owner.assign(n, -1);
  for (PointId u : order) {
    if (out.owner[u] >= 0) continue;
    const int idx = static_cast<int>(out.reps.size());
    PointSet kids;
    for (PointId x = 0; x < n; ++x) {
      if (out.owner[x] < 0 && space(u, x) <= radius) {
        out.owner[x] = idx;
        kids.push_back(x);
      }
    }
    out.reps.push_back(u);
    out.children.push_back(std::move(kids));
  }
  return out;
}

int FirefighterInstance::ancestor(int from, int j, int to) const {
  while (from > to) {
    j = parent[from][j];
    --from;
  }
  return j;
}

std::vector<double> cgk_alphas(int levels) {
  std::vector<double> a(levels, kLowerAlpha);
  if (levels > 0) a[0] = kTopAlpha;
  return a;
}

FirefighterInstance cgk_build(const RobustInstance& instance, std::span<const double> alphas,
                              const CoverageVector& cov) {
  const int t = instance.levels();
  const int n = instance.space.size();
  if (static_cast<int>(alphas.size()) != t) throw InputError("need one dilation per level");
  FirefighterInstance ff;
  ff.nodes.resize(t);
  ff.parent.resize(t);
  ff.children.resize(t);
  ff.budgets = instance.budgets;
  ff.reach.resize(t);
  std::vector<std::vector<int>> owner(t);
  for (int i = t - 1; i >= 0; --i) {
    std::vector<double> prio(n, 0.0);
    for (PointId v = 0; v < n; ++v) {
      for (int j = 0; j <= i; ++j) prio[v] += cov.at(j, v);
    }
    ff.reach[i] = alphas[i] * instance.radii[i];
    HsResult h = hs(instance.space, ff.reach[i], prio);
    ff.nodes[i] = std::move(h.reps);
    ff.children[i] = std::move(h.children);
    owner[i] = std::move(h.owner);
  }
  ff.parent[0].assign(ff.nodes[0].size(), -1);
  for (int i = 1; i < t; ++i) {
    for (PointId v : ff.nodes[i]) ff.parent[i].push_back(owner[i - 1][v]);
  }
  for (const auto& kids : ff.children[t - 1]) ff.leaf_weight.push_back(instance.weight.sum(kids));
  return ff;
}

double YAssignment::level_sum(int level) const {
  return std::accumulate(values[level].begin(), values[level].end(), 0.0);
}

YAssignment compute_y(const FirefighterInstance& forest, const CoverageVector& cov) {
  YAssignment y;
  const int t = forest.levels();
  y.values.resize(t);
  for (int i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < forest.nodes[i].size(); ++j) {
      const PointId v = forest.nodes[i][j];
      if (i == 0) {
        y.values[i].push_back(cov.at(0, v));
        continue;
      }
      double above = 0.0;
      for (int l = 0; l < i; ++l) above += cov.at(l, forest.nodes[l][forest.ancestor(i, static_cast<int>(j), l)]);
      y.values[i].push_back(std::min(cov.at(i, v), 1.0 - above));
    }
  }
  return y;
}

namespace {

// leaves_below[i][j]: number of last-level nodes under node j of level i;
// weight_below[i][j]: their total leaf weight.
void subtree_totals(const FirefighterInstance& ff, std::vector<std::vector<int>>& leaves_below,
                    std::vector<std::vector<Weight>>& weight_below) {
  const int t = ff.levels();
  leaves_below.assign(t, {});
  weight_below.assign(t, {});
  for (int i = 0; i < t; ++i) {
    leaves_below[i].assign(ff.nodes[i].size(), 0);
    weight_below[i].assign(ff.nodes[i].size(), 0);
  }
  for (std::size_t j = 0; j < ff.nodes[t - 1].size(); ++j) {
    for (int i = t - 1; i >= 0; --i) {
      const int a = ff.ancestor(t - 1, static_cast<int>(j), i);
      leaves_below[i][a] += 1;
      weight_below[i][a] += ff.leaf_weight[j];
    }
  }
}

}  // namespace

SparseLp build_sparse_lp(const FirefighterInstance& ff) {
  const int t = ff.levels();
  std::vector<std::vector<int>> leaves_below;
  std::vector<std::vector<Weight>> weight_below;
  subtree_totals(ff, leaves_below, weight_below);

  SparseLp out;
  std::vector<std::vector<int>> var_of(t);
  for (int i = 0; i < t; ++i) {
    var_of[i].assign(ff.nodes[i].size(), -1);
    for (std::size_t j = 0; j < ff.nodes[i].size(); ++j) {
      if (leaves_below[i][j] == 0) continue;
      var_of[i][j] = static_cast<int>(out.var_node.size());
      out.var_node.emplace_back(i, static_cast<int>(j));
      out.lp.objective.push_back(static_cast<double>(weight_below[i][j]));
    }
  }
  const int vars = static_cast<int>(out.var_node.size());
  for (int i = 0; i < t; ++i) {
    LinearConstraint row{std::vector<double>(vars, 0.0), Relation::kLessEqual,
                         static_cast<double>(i == 0 ? ff.budgets[0] - t : ff.budgets[i])};
    for (int v : var_of[i]) {
      if (v >= 0) row.coeffs[v] = 1.0;
    }
    out.lp.constraints.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < ff.nodes[t - 1].size(); ++j) {
    LinearConstraint row{std::vector<double>(vars, 0.0), Relation::kLessEqual, 1.0};
    for (int i = 0; i < t; ++i) row.coeffs[var_of[i][ff.ancestor(t - 1, static_cast<int>(j), i)]] = 1.0;
    out.lp.constraints.push_back(std::move(row));
  }
  return out;
}

Case1Rounding round_sparse_lp(const RobustInstance& instance, const FirefighterInstance& ff) {
  const int t = ff.levels();
  const auto& d = instance.space;
  SparseLp sparse = build_sparse_lp(ff);
  Case1Rounding out;
  out.lp = simplex_vertex_solve(sparse.lp);
  if (out.lp.status != LpStatus::kOptimal) {
    throw InternalAssertion("sparse forest LP has no optimum although its zero point is feasible");
  }
  std::vector<std::vector<char>> open(t);
  for (int i = 0; i < t; ++i) open[i].assign(ff.nodes[i].size(), 0);
  for (std::size_t v = 0; v < sparse.var_node.size(); ++v) {
    const auto [i, j] = sparse.var_node[v];
    const double x = out.lp.x[v];
    if (x >= 1.0 - kFeasibilityTol) {
      open[i][j] = 1;
    } else if (x > kFeasibilityTol) {
      ++out.fractional;
      open[0][ff.ancestor(i, j, 0)] = 1;
    }
  }
  if (out.fractional > t) {
    throw InternalAssertion(fmt::format("sparse LP vertex has {} fractional variables, more than {}", out.fractional, t));
  }

  out.solution.levels.resize(t);
  for (int i = 0; i < t; ++i) {
    const int opened = static_cast<int>(std::count(open[i].begin(), open[i].end(), 1));
    if (opened > ff.budgets[i]) {
      throw InternalAssertion(fmt::format("rounding opens {} nodes on level {}, budget {}", opened, i, ff.budgets[i]));
    }
    for (std::size_t j = 0; j < ff.nodes[i].size(); ++j) {
      if (open[i][j]) out.solution.levels[i].centers.push_back(ff.nodes[i][j]);
    }
    std::sort(out.solution.levels[i].centers.begin(), out.solution.levels[i].centers.end());
  }
  for (std::size_t leaf = 0; leaf < ff.nodes[t - 1].size(); ++leaf) {
    for (int i = 0; i < t; ++i) {
      const int a = ff.ancestor(t - 1, static_cast<int>(leaf), i);
      if (!open[i][a]) continue;
      auto& level = out.solution.levels[i];
      for (PointId x : ff.children[t - 1][leaf]) level.radius = std::max(level.radius, d(ff.nodes[i][a], x));
    }
  }
  return out;
}

const char* cut_kind_name(CutKind kind) {
  switch (kind) {
    case CutKind::kBox:
      return "box";
    case CutKind::kCoverage:
      return "coverage";
    case CutKind::kPointSum:
      return "point-sum";
    case CutKind::kBudget:
      return "budget";
    case CutKind::kTopBudget:
      return "top-budget";
  }
  return "unknown";
}

double default_oracle_tolerance(const RobustInstance& instance) {
  const double mass = static_cast<double>(std::max<Weight>(instance.weight.total(), instance.space.size()));
  return 1.0 / (4.0 * (1.0 + (instance.levels() + 2) * mass));
}

namespace {

Eigen::VectorXd zeros(int dim) { return Eigen::VectorXd::Zero(dim); }

// Q subsets of `pool` of size 0..max_size, by size then lexicographically.
void for_each_subset(const PointSet& pool, int max_size, const std::function<void(const PointSet&)>& fn) {
  PointSet current;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (left == 0) {
      fn(current);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i + 1, left - 1);
      current.pop_back();
    }
  };
  for (int size = 0; size <= max_size; ++size) rec(0, size);
}

}  // namespace

OracleOutcome separation_oracle(const RobustInstance& instance, const CoverageVector& cov, const OracleConfig& config) {
  const int t = instance.levels();
  const int n = instance.space.size();
  const int dim = t * n;
  const double tol = config.tolerance;
  if (cov.levels() != t || cov.points() != n) throw InputError("coverage vector does not match the instance");

  double mass = 0.0;
  for (PointId v = 0; v < n; ++v) {
    for (int i = 0; i < t; ++i) mass += static_cast<double>(instance.weight[v]) * cov.at(i, v);
  }
  if (mass < static_cast<double>(instance.target) - tol) {
    Cut cut{{zeros(dim), -static_cast<double>(instance.target)}, CutKind::kCoverage};
    for (PointId v = 0; v < n; ++v) {
      for (int i = 0; i < t; ++i) cut.halfspace.normal[cov.index(i, v)] = -static_cast<double>(instance.weight[v]);
    }
    return cut;
  }
  for (PointId v = 0; v < n; ++v) {
    double s = 0.0;
    for (int i = 0; i < t; ++i) s += cov.at(i, v);
    if (s > 1.0 + tol) {
      Cut cut{{zeros(dim), 1.0}, CutKind::kPointSum};
      for (int i = 0; i < t; ++i) cut.halfspace.normal[cov.index(i, v)] = 1.0;
      return cut;
    }
  }

  const FirefighterInstance ff = cgk_build(instance, cgk_alphas(t), cov);
  for (int i = 0; i < t; ++i) {
    double s = 0.0;
    for (PointId v : ff.nodes[i]) s += cov.at(i, v);
    if (s > instance.budgets[i] + tol) {
      Cut cut{{zeros(dim), static_cast<double>(instance.budgets[i])}, CutKind::kBudget};
      for (PointId v : ff.nodes[i]) cut.halfspace.normal[cov.index(i, v)] = 1.0;
      return cut;
    }
  }

  const YAssignment y = compute_y(ff, cov);
  const double top = y.level_sum(0);
  const int k1 = instance.budgets[0];
  if (k1 - t >= 0 && top <= k1 - t + tol) {
    Case1Rounding r = round_sparse_lp(instance, ff);
    const auto report = verify_solution(instance, r.solution);
    if (!report.pass()) {
      throw InternalAssertion("sparse LP rounding does not verify: " + report.failures.front());
    }
    return RoundedOutcome{std::move(r.solution), r.fractional};
  }

  ResidualOutcome out;
  out.top_nodes = ff.nodes[0];
  std::sort(out.top_nodes.begin(), out.top_nodes.end());
  out.top_sum = top;
  const double r1 = instance.radii[0];
  PointSet pool;
  for (PointId q = 0; q < n; ++q) {
    if (config.prune_far_centers) {
      const bool near = std::any_of(out.top_nodes.begin(), out.top_nodes.end(),
                                    [&](PointId u) { return instance.space(q, u) <= r1; });
      if (near) continue;
    }
    pool.push_back(q);
  }
  for_each_subset(pool, std::min(t - 1, k1), [&](const PointSet& far) {
    std::vector<char> gone(n, 0);
    for (PointId q : far) {
      for (PointId x = 0; x < n; ++x) {
        if (instance.space(q, x) <= r1) gone[x] = 1;
      }
    }
    Residual res;
    res.far_centers = far;
    std::vector<Weight> w(n, 0);
    Weight removed_mass = 0;
    for (PointId x = 0; x < n; ++x) {
      if (gone[x]) {
        res.removed.push_back(x);
        removed_mass += instance.weight[x];
      } else {
        w[x] = instance.weight[x];
      }
    }
    PointSet candidates;
    std::set_difference(out.top_nodes.begin(), out.top_nodes.end(), far.begin(), far.end(),
                        std::back_inserter(candidates));
    res.instance.space = instance.space;
    res.instance.radii = instance.radii;
    res.instance.radii[0] = 2 * r1;
    res.instance.budgets = instance.budgets;
    res.instance.budgets[0] = k1 - static_cast<int>(far.size());
    res.instance.weight = WeightFn(std::move(w));
    res.instance.target = std::max<Weight>(0, instance.target - removed_mass);
    res.instance.restriction = make_restriction(instance.space, std::move(candidates), kTopAlpha * r1);
    out.residuals.push_back(std::move(res));
  });
  return out;
}

long default_iteration_cap(int dimension, double epsilon) {
  const double dim = std::max(dimension, 2);
  return static_cast<long>(std::ceil(4.0 * dim * dim * (std::log(dim) + std::log(1.0 / epsilon))));
}

namespace {

std::string hash_query(const std::vector<double>& q) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : q) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(&v);
    for (std::size_t b = 0; b < sizeof(double); ++b) {
      h ^= bytes[b];
      h *= 1099511628211ULL;
    }
  }
  return fmt::format("{:016x}", h);
}

std::string residual_key(const Residual& r) {
  std::string key = fmt::format("{}|{}|", fmt::join(r.removed, ","), r.instance.budgets[0]);
  key += fmt::format("{}", fmt::join(r.instance.restriction->candidates, ","));
  return key;
}

}  // namespace

LoopResult ellipsoid_loop(const RobustInstance& instance, const WsSolver& ws_solver, const LoopConfig& config) {
  const int t = instance.levels();
  const int n = instance.space.size();
  const int dim = t * n;
  LoopResult result;
  result.iteration_cap = config.iteration_cap > 0 ? config.iteration_cap : default_iteration_cap(dim, config.epsilon);

  if (instance.target <= 0) {
    result.status = LoopStatus::kSolved;
    result.route = "trivial";
    result.solution = Solution{std::vector<LevelAssignment>(t)};
    return result;
  }
  if (instance.target > instance.weight.total()) {
    result.status = LoopStatus::kInfeasible;
    return result;
  }

  OracleConfig oracle_config;
  oracle_config.tolerance = config.tolerance > 0 ? config.tolerance : default_oracle_tolerance(instance);
  oracle_config.prune_far_centers = config.prune_far_centers;
  const double mass = static_cast<double>(std::max<Weight>(instance.weight.total(), n));
  // Cuts are violated by more than `tolerance` at the query and the query is
  // within `margin` of the center in every coordinate, so the box of half-width
  // `margin` around any integral feasible coverage vector survives every cut.
  const double margin = oracle_config.tolerance / (2.0 * t * mass);
  const double volume_floor = dim * std::log(2.0 * margin);

  EllipsoidState ellipsoid = make_ball(Eigen::VectorXd::Constant(dim, 0.5), std::sqrt(static_cast<double>(dim)));
  std::map<std::string, std::optional<Solution>> cache;

  const auto emit = [&](long it, const std::vector<double>& q, const std::string& outcome, const Cut* cut) {
    if (!config.trace) return;
    TraceRecord rec{it, hash_query(q), outcome, std::nullopt};
    if (cut) rec.cut = *cut;
    config.trace(rec);
  };

  for (long it = 0; it < result.iteration_cap; ++it) {
    result.iterations = it;
    if (ellipsoid.log_volume() < volume_floor) {
      result.status = LoopStatus::kInfeasible;
      return result;
    }
    const Eigen::VectorXd& c = ellipsoid.center;
    std::optional<Cut> cut;
    for (int j = 0; j < dim && !cut; ++j) {
      if (c[j] > 1.0 + margin) {
        cut = Cut{{zeros(dim), 1.0}, CutKind::kBox};
        cut->halfspace.normal[j] = 1.0;
      } else if (c[j] < -margin) {
        cut = Cut{{zeros(dim), 0.0}, CutKind::kBox};
        cut->halfspace.normal[j] = -1.0;
      }
    }
    std::vector<double> query(dim);
    for (int j = 0; j < dim; ++j) query[j] = std::clamp(c[j], 0.0, 1.0);

    if (!cut) {
      ++result.oracle_calls;
      OracleOutcome outcome = separation_oracle(instance, CoverageVector(t, n, query), oracle_config);
      if (auto* rounded = std::get_if<RoundedOutcome>(&outcome)) {
        emit(it, query, "rounded", nullptr);
        result.status = LoopStatus::kSolved;
        result.route = "rounded";
        result.solution = std::move(rounded->solution);
        result.iterations = it + 1;
        return result;
      }
      if (auto* res = std::get_if<ResidualOutcome>(&outcome)) {
        std::vector<const Residual*> pending;
        std::vector<std::string> keys;
        for (const auto& r : res->residuals) {
          pending.push_back(&r);
          keys.push_back(residual_key(r));
        }
        std::optional<std::size_t> winner;
        std::vector<std::optional<Solution>> answers(pending.size());
        const std::size_t batch = static_cast<std::size_t>(std::max(config.threads, 1));
        for (std::size_t start = 0; start < pending.size() && !winner; start += batch) {
          const std::size_t stop = std::min(pending.size(), start + batch);
          std::vector<std::future<std::optional<Solution>>> futures;
          std::vector<std::size_t> launched;
          for (std::size_t k = start; k < stop; ++k) {
            if (auto hit = cache.find(keys[k]); hit != cache.end()) {
              answers[k] = hit->second;
              continue;
            }
            ++result.ws_calls;
            launched.push_back(k);
            if (batch == 1) {
              std::promise<std::optional<Solution>> p;
              p.set_value(ws_solver(pending[k]->instance));
              futures.push_back(p.get_future());
            } else {
              futures.push_back(std::async(std::launch::async, ws_solver, std::cref(pending[k]->instance)));
            }
          }
          for (std::size_t f = 0; f < futures.size(); ++f) {
            answers[launched[f]] = futures[f].get();
            cache.emplace(keys[launched[f]], answers[launched[f]]);
          }
          for (std::size_t k = start; k < stop && !winner; ++k) {
            if (answers[k]) winner = k;
          }
        }
        if (winner) {
          const Residual& r = *pending[*winner];
          Solution lifted = *answers[*winner];
          auto& top = lifted.levels[0];
          top.centers.insert(top.centers.end(), r.far_centers.begin(), r.far_centers.end());
          std::sort(top.centers.begin(), top.centers.end());
          if (!r.far_centers.empty()) top.radius = std::max(top.radius, instance.radii[0]);
          const auto report = verify_solution(instance, lifted);
          if (!report.pass()) throw InternalAssertion("lifted residual solution does not verify: " + report.failures.front());
          emit(it, query, "residual", nullptr);
          result.status = LoopStatus::kSolved;
          result.route = "residual";
          result.solution = std::move(lifted);
          result.iterations = it + 1;
          return result;
        }
        Cut top_cut{{zeros(dim), static_cast<double>(instance.budgets[0] - t)}, CutKind::kTopBudget};
        for (PointId v : res->top_nodes) top_cut.halfspace.normal[v] = 1.0;
        cut = std::move(top_cut);
      } else {
        cut = std::get<Cut>(std::move(outcome));
      }
    }
    emit(it, query, std::string("cut:") + cut_kind_name(cut->kind), &*cut);
    if (!(cut->halfspace.violation(c) > 0)) {
      throw InternalAssertion(fmt::format("{} cut is not violated at the ellipsoid center", cut_kind_name(cut->kind)));
    }
    if (config.record_cuts) {
      result.cuts.push_back({*cut, query, c});
    }
    Halfspace keep = cut->halfspace;
    keep.offset += keep.normal.lpNorm<1>() * margin;
    auto next = ellipsoid_deep_step(ellipsoid, keep);
    if (!next) {
      result.status = LoopStatus::kInfeasible;
      result.iterations = it + 1;
      return result;
    }
    ellipsoid = std::move(*next);
  }
  result.iterations = result.iteration_cap;
  result.status = LoopStatus::kIterationCap;
  return result;
}

}  // namespace nukc
