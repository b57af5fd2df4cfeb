#include "nukc/exact.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace nukc {

namespace {

using Mask = std::uint64_t;

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Scorer {
  const Instance& instance;
  bool structured = false;
  Mask all = 0;

  Weight sum(const WeightFn& w, Mask m) const {
    Weight s = 0;
    while (m) {
      const int p = std::countr_zero(m);
      s += w[p];
      m &= m - 1;
    }
    return s;
  }

  // (feasible, covered weight) for the union mask; `upper` covers every level
  // but the last and `bottom_centers` marks the last level's centers.
  std::pair<bool, Weight> operator()(Mask covered, Mask upper, Mask bottom_centers) const {
    if (const auto* nk = std::get_if<NukcInstance>(&instance)) {
      (void)nk;
      return {covered == all, std::popcount(covered)};
    }
    if (const auto* rb = std::get_if<RobustInstance>(&instance)) {
      const Weight w = sum(rb->weight, covered);
      return {w >= rb->target, w};
    }
    const auto& cf = std::get<ColorfulInstance>(instance);
    const Weight red = sum(cf.red, covered);
    const Weight blue = sum(cf.blue, structured ? (upper | bottom_centers) : covered);
    return {red >= cf.red_target && blue >= cf.blue_target, red + blue};
  }
};

template <typename F>
void for_each_combination(const PointSet& pool, int size, F&& fn) {
  const int n = static_cast<int>(pool.size());
  if (size > n) return;
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  PointSet chosen(size);
  for (;;) {
    for (int i = 0; i < size; ++i) chosen[i] = pool[idx[i]];
    if (!fn(chosen)) return;
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Common {
  const MetricSpace* space;
  const std::vector<double>* radii;
  const std::vector<int>* budgets;
  const std::optional<CenterRestriction>* restriction;
};

Common common_of(const Instance& instance) {
  return std::visit(
      [](const auto& inst) -> Common {
        using T = std::decay_t<decltype(inst)>;
        static const std::optional<CenterRestriction> none;
        if constexpr (std::is_same_v<T, NukcInstance>) {
          return {&inst.space, &inst.radii, &inst.budgets, &none};
        } else {
          return {&inst.space, &inst.radii, &inst.budgets, &inst.restriction};
        }
      },
      instance);
}

}  // namespace

BruteResult brute_solve(const Instance& instance, const BruteOptions& options) {
  const Common c = common_of(instance);
  const auto& d = *c.space;
  const int n = d.size();
  const int t = static_cast<int>(c.radii->size());
  if (n > 64) throw BudgetExceeded("brute force supports at most 64 points");

  std::vector<PointSet> cands(t);
  std::vector<int> sizes(t);
  std::vector<std::vector<Mask>> ball(t, std::vector<Mask>(n, 0));
  double tuples = 1;
  for (int i = 0; i < t; ++i) {
    for (PointId p = 0; p < n; ++p) {
      bool ok = true;
      if (i < static_cast<int>(options.level_candidates.size()) && options.level_candidates[i]) {
        const auto& lc = *options.level_candidates[i];
        ok = std::find(lc.begin(), lc.end(), p) != lc.end();
      }
      if (ok && *c.restriction && (*c.restriction)->level == i) {
        const auto& rc = (*c.restriction)->candidates;
        ok = std::find(rc.begin(), rc.end(), p) != rc.end();
      }
      if (ok) cands[i].push_back(p);
      for (PointId q = 0; q < n; ++q) {
        if (d(p, q) <= options.dilation * (*c.radii)[i]) ball[i][p] |= Mask{1} << q;
      }
    }
    sizes[i] = std::min(std::max((*c.budgets)[i], 0), static_cast<int>(cands[i].size()));
    tuples *= binomial(static_cast<int>(cands[i].size()), sizes[i]);
  }
  if (tuples > options.tuple_budget) {
    throw BudgetExceeded(fmt::format("brute force needs {:.3g} tuples, budget is {:.3g}", tuples, options.tuple_budget));
  }

  Scorer score{instance, options.structured, n == 64 ? ~Mask{0} : (Mask{1} << n) - 1};
  BruteResult best;
  best.tuples = tuples;
  bool have = false;
  bool done = false;
  std::vector<PointSet> current(t);

  std::function<void(int, Mask, Mask)> rec = [&](int level, Mask covered, Mask upper) {
    if (done) return;
    if (level == t) {
      Mask bottom = 0;
      if (t > 0) {
        for (PointId p : current[t - 1]) bottom |= Mask{1} << p;
      }
      const auto [feasible, weight] = score(covered, upper, bottom);
      if (!have || (feasible && !best.feasible) || (feasible == best.feasible && weight > best.best_coverage)) {
        have = true;
        best.feasible = feasible;
        best.best_coverage = weight;
        best.witness.levels.clear();
        for (int i = 0; i < t; ++i) best.witness.levels.push_back({current[i], options.dilation * (*c.radii)[i]});
        if (feasible && options.stop_at_first_feasible) done = true;
      }
      return;
    }
    for_each_combination(cands[level], sizes[level], [&](const PointSet& chosen) {
      Mask m = covered;
      for (PointId p : chosen) m |= ball[level][p];
      current[level] = chosen;
      rec(level + 1, m, level + 1 < t ? m : upper);
      return !done;
    });
  };
  rec(0, 0, 0);
  return best;
}

std::vector<Solution> enumerate_feasible(const RobustInstance& instance, double tuple_budget) {
  const auto& d = instance.space;
  const int n = d.size();
  const int t = instance.levels();
  if (n > 64) throw BudgetExceeded("enumeration supports at most 64 points");
  double tuples = 1;
  for (int i = 0; i < t; ++i) {
    double level = 0;
    for (int s = 0; s <= std::min(instance.budgets[i], n); ++s) level += binomial(n, s);
    tuples *= level;
  }
  if (tuples > tuple_budget) throw BudgetExceeded("enumeration exceeds its tuple budget");

  std::vector<std::vector<Mask>> ball(t, std::vector<Mask>(n, 0));
  for (int i = 0; i < t; ++i)
    for (PointId p = 0; p < n; ++p)
      for (PointId q = 0; q < n; ++q)
        if (d(p, q) <= instance.radii[i]) ball[i][p] |= Mask{1} << q;

  PointSet all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Solution> out;
  std::vector<PointSet> current(t);
  std::function<void(int, Mask)> rec = [&](int level, Mask covered) {
    if (level == t) {
      Weight w = 0;
      for (PointId p = 0; p < n; ++p) {
        if (covered >> p & 1) w += instance.weight[p];
      }
      if (w >= instance.target) {
        Solution s;
        for (int i = 0; i < t; ++i) s.levels.push_back({current[i], instance.radii[i]});
        out.push_back(std::move(s));
      }
      return;
    }
    for (int size = 0; size <= std::min(instance.budgets[level], n); ++size) {
      for_each_combination(all, size, [&](const PointSet& chosen) {
        Mask m = covered;
        for (PointId p : chosen) m |= ball[level][p];
        current[level] = chosen;
        rec(level + 1, m);
        return true;
      });
    }
  };
  rec(0, 0);
  return out;
}

PlantedInstance plant_instance(std::uint64_t seed, PlantVariant variant, const PlantParams& params) {
  std::mt19937_64 rng(seed);
  const auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int t = params.levels;
  if (t < 1) throw InputError("planting needs at least one level");

  std::vector<double> radii(t);
  if (params.separation_ratio > 0) {
    radii[t - 1] = uniform(1, std::max(1, params.bottom_radius_max));
    for (int i = t - 2; i >= 0; --i) radii[i] = std::ceil(params.separation_ratio * radii[i + 1]) + uniform(0, 2);
  } else {
    radii[0] = uniform(std::max(1, params.top_radius_max / 3), params.top_radius_max);
    for (int i = 1; i < t; ++i) radii[i] = uniform(0, static_cast<int>(radii[i - 1]));
  }
  std::vector<int> budgets(t);
  int centers_total = 0;
  for (int i = 0; i < t; ++i) {
    budgets[i] = uniform(1, std::max(1, params.max_budget));
    centers_total += budgets[i];
  }
  const int outliers = variant == PlantVariant::kNukc ? 0 : params.outliers;
  if (params.n < centers_total + outliers) {
    // Shrink budgets until the planted centers fit.
    for (int i = t - 1; i >= 0 && params.n < centers_total + outliers; --i) {
      const int cut = std::min(budgets[i] - 1, centers_total + outliers - params.n);
      budgets[i] -= cut;
      centers_total -= cut;
    }
    if (params.n < centers_total + outliers) throw InputError("too few points for the planted centers");
  }

  const int box = static_cast<int>(2 * radii[0]) * (centers_total + 1) + 10;
  std::vector<std::vector<double>> coords;
  std::vector<std::pair<int, int>> owner;  // (level, center slot) of each center point
  for (int i = 0; i < t; ++i) {
    for (int k = 0; k < budgets[i]; ++k) {
      coords.push_back({static_cast<double>(uniform(0, box)), static_cast<double>(uniform(0, box))});
      owner.emplace_back(i, static_cast<int>(coords.size()) - 1);
    }
  }
  const int inliers = params.n - outliers;
  while (static_cast<int>(coords.size()) < inliers) {
    const auto [level, at] = owner[uniform(0, centers_total - 1)];
    const int r = static_cast<int>(radii[level]);
    const int dx = uniform(-r, r);
    const int rest = r - std::abs(dx);
    const int dy = uniform(-rest, rest);
    coords.push_back({coords[at][0] + dx, coords[at][1] + dy});
  }
  const double far = box + 4 * radii[0] + 10;
  for (int o = 0; o < outliers; ++o) {
    coords.push_back({far + o * (2 * radii[0] + 10), static_cast<double>(uniform(0, box))});
  }

  PointSet perm(params.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> shuffled(params.n);
  for (int p = 0; p < params.n; ++p) shuffled[perm[p]] = coords[p];
  MetricSpace space = MetricSpace::from_points(std::move(shuffled), Norm::kL1);

  Solution witness;
  witness.levels.resize(t);
  for (const auto& [level, at] : owner) witness.levels[level].centers.push_back(perm[at]);
  for (int i = 0; i < t; ++i) {
    witness.levels[i].radius = radii[i];
    std::sort(witness.levels[i].centers.begin(), witness.levels[i].centers.end());
  }
  const auto covered = covered_mask(space, witness);

  PlantedInstance out;
  out.witness = witness;
  switch (variant) {
    case PlantVariant::kNukc:
      out.instance = NukcInstance{space, radii, budgets};
      break;
    case PlantVariant::kRobust: {
      RobustInstance r{space, radii, budgets, WeightFn::unit(params.n), 0, std::nullopt};
      r.target = static_cast<Weight>(std::count(covered.begin(), covered.end(), 1));
      out.instance = std::move(r);
      break;
    }
    case PlantVariant::kColorful: {
      std::vector<Weight> red(params.n), blue(params.n);
      for (int p = 0; p < params.n; ++p) {
        const int kind = uniform(0, 2);
        red[p] = kind != 1 ? 1 : 0;
        blue[p] = kind != 0 ? 1 : 0;
      }
      ColorfulInstance c{space, radii, budgets, WeightFn(red), WeightFn(blue), 0, 0, std::nullopt};
      for (int p = 0; p < params.n; ++p) {
        if (covered[p]) {
          c.red_target += red[p];
          c.blue_target += blue[p];
        }
      }
      out.instance = std::move(c);
      break;
    }
  }
  return out;
}

}  // namespace nukc
