#include "nukc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "nukc/colorful_reduction.hpp"
#include "nukc/net_reduction.hpp"
#include "nukc/self_coverage.hpp"
#include "nukc/ws_dp.hpp"

namespace nukc {

namespace {

constexpr int kChainLevels = 4;

double separation_slack(double b) { return 26.0 / b + 81.0 / (b * b) + 212.0 / (b * b * b); }

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Top radius after the colorful and self-coverage reductions of a three-level
// robust instance whose top radius is already doubled: 2 a_1 + 26 a_2 + 81 a_3.
bool separation_chain_holds(std::span<const double> robust_radii) {
  const double a1 = robust_radii[0];
  const double a2 = robust_radii[1];
  const double a3 = robust_radii[2];
  return a1 >= 26 * a2 + 81 * a3;
}

template <typename Inst>
Inst pad_levels(Inst inst, int levels) {
  while (inst.levels() < levels) {
    inst.radii.push_back(0.0);
    inst.budgets.push_back(0);
  }
  return inst;
}

Solution truncate_levels(Solution s, int levels) {
  for (int i = levels; i < s.level_count(); ++i) {
    if (!s.levels[i].centers.empty()) throw InternalAssertion("padding level received centers");
  }
  s.levels.resize(levels);
  return s;
}

LoopConfig loop_config(const PipelineConfig& config) {
  LoopConfig lc;
  lc.epsilon = config.epsilon;
  lc.iteration_cap = config.iteration_cap;
  lc.threads = config.threads;
  lc.prune_far_centers = config.prune_far_centers;
  lc.trace = config.trace;
  return lc;
}

// Bounds per merged level expanded onto the original levels, checked against
// the realized radii of `solution` on the original instance.
void fill_realized(DilationLedger& ledger, const RadiusMergeMap& map, const std::array<double, 4>& bounds,
                   const Solution& solution, const VerificationReport& report) {
  const std::size_t levels = solution.levels.size();
  ledger.bound_radius.assign(levels, 0.0);
  ledger.realized_radius.assign(levels, 0.0);
  ledger.realized_dilation = report.dilation;
  for (std::size_t g = 0; g < map.groups.size(); ++g) {
    for (int j : map.groups[g]) ledger.bound_radius[j] = bounds[g];
  }
  for (std::size_t j = 0; j < levels; ++j) {
    if (!solution.levels[j].centers.empty()) ledger.realized_radius[j] = solution.levels[j].radius;
    if (ledger.realized_radius[j] > ledger.bound_radius[j] * (1 + 1e-12)) {
      throw InternalAssertion(fmt::format("level {} realized radius {} exceeds its bound {}", j,
                                          ledger.realized_radius[j], ledger.bound_radius[j]));
    }
  }
}

}  // namespace

double default_beta() {
  double lo = 2.0;
  double hi = 1000.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (separation_slack(mid) > 1.0 ? lo : hi) = mid;
  }
  return std::ceil(hi * 1e6) / 1e6;
}

double composed_constant(double beta) {
  const double b = beta;
  const std::array<double, 4> unit{b * b * b, b * b, b, 1.0};
  const auto bounds = composed_bounds(unit);
  double c = 0.0;
  for (int i = 0; i < kChainLevels; ++i) c = std::max(c, bounds[i] / unit[i]);
  return c;
}

std::array<double, 4> composed_bounds(const std::array<double, 4>& r) {
  const double rounded1 = 6 * r[0] + 2 * r[1] + 2 * r[2] + 22 * r[3];
  const double residual1 = 2 * r[0] + 49 * r[1] + 153 * r[2] + 410 * r[3];
  const double rounded2 = 2 * r[1] + 2 * r[2] + 10 * r[3];
  const double residual2 = 23 * r[1] + 72 * r[2] + 192 * r[3];
  const double rounded3 = 2 * r[2] + 6 * r[3];
  const double residual3 = 3 * r[2] + 8 * r[3];
  return {std::max(rounded1, residual1), std::max(rounded2, residual2), std::max(rounded3, residual3), 2 * r[3]};
}

std::optional<Solution> ws_robust_solve(const RobustInstance& instance) {
  if (instance.levels() != 3) throw InputError("well-separated robust solver expects three levels");
  if (!instance.restriction) throw InputError("well-separated robust solver needs a center restriction");
  const auto [migrated, first] = phase1(instance);
  const int n = migrated.space.size();
  int positive = 0;
  for (PointId p = 0; p < n; ++p) positive += migrated.weight[p] > 0 ? 1 : 0;
  // Appending a zero-weight point to the red prefix only adds a red point
  // that must be covered, so prefixes beyond the positive part are dominated.
  for (int split = 0; split <= positive; ++split) {
    ColorfulSplit part = phase2_split_at(migrated, split);
    if (part.instance.red_target > part.instance.red.total() || part.instance.blue_target > part.instance.blue.total()) {
      continue;
    }
    auto [widened, blue_ctx] = phase1_blue(part.instance);
    auto [reduced, red_ctx] = phase2_red(widened, blue_ctx);
    const CenterRestriction& restriction = *instance.restriction;
    if (restriction.separation < 2 * reduced.radii[0]) {
      throw ConfigError(fmt::format("candidate separation {} is below twice the reduced top radius {}",
                                    restriction.separation, reduced.radii[0]));
    }
    const WsResult ws = solve_ws(reduced, restriction);
    if (!ws.feasible) continue;
    const Solution colorful = lift_self_coverage(blue_ctx, red_ctx, reduced, ws.witness);
    const Solution split_lift = phase2_lift(part.context, part.instance, colorful);
    Solution lifted = phase1_lift(first, split_lift);
    const auto report = verify_solution(instance, lifted);
    if (!report.pass()) throw InternalAssertion("well-separated lift does not verify: " + report.failures.front());
    return lifted;
  }
  return std::nullopt;
}

std::optional<Solution> solve_colorful(const ColorfulInstance& instance) {
  if (instance.levels() != 2) throw InputError("colorful solver expects two levels");
  if (!instance.restriction) throw InputError("colorful solver needs a center restriction");
  if (instance.red_target > instance.red.total() || instance.blue_target > instance.blue.total()) return std::nullopt;
  auto [widened, blue_ctx] = phase1_blue(instance);
  auto [reduced, red_ctx] = phase2_red(widened, blue_ctx);
  if (instance.restriction->separation < 2 * reduced.radii[0]) {
    throw ConfigError(fmt::format("candidate separation {} is below twice the reduced top radius {}",
                                  instance.restriction->separation, reduced.radii[0]));
  }
  const WsResult ws = solve_ws(reduced, *instance.restriction);
  if (!ws.feasible) return std::nullopt;
  Solution lifted = lift_self_coverage(blue_ctx, red_ctx, reduced, ws.witness);
  const auto report = verify_solution(instance, lifted);
  if (!report.pass()) throw InternalAssertion("colorful lift does not verify: " + report.failures.front());
  return lifted;
}

namespace {

PipelineResult run_robust_chain(const RobustInstance& robust3, const PipelineConfig& config, DilationLedger& ledger,
                                Stopwatch& clock) {
  if (!separation_chain_holds(robust3.radii)) {
    throw ConfigError(fmt::format("radii ({}) violate the separation chain; increase beta",
                                  fmt::join(robust3.radii, ", ")));
  }
  const LoopResult loop = ellipsoid_loop(robust3, ws_robust_solve, loop_config(config));
  ledger.stages.push_back({"round-or-cut", "top dilation 6 and lower 2, or residual chain", clock.lap()});
  ledger.route = loop.route;
  ledger.iterations = loop.iterations;
  ledger.iteration_cap = loop.iteration_cap;
  ledger.ws_calls = loop.ws_calls;
  PipelineResult out;
  out.status = loop.status == LoopStatus::kSolved       ? PipelineStatus::kSolved
               : loop.status == LoopStatus::kInfeasible ? PipelineStatus::kInfeasible
                                                        : PipelineStatus::kIterationCap;
  out.solution = loop.solution;
  return out;
}

}  // namespace

PipelineResult solve_4nukc(const NukcInstance& instance, const PipelineConfig& config) {
  if (auto v = validate_instance(instance); !v.empty()) throw InputError("invalid instance: " + v.front());
  Stopwatch clock;
  DilationLedger ledger;
  ledger.composed_constant = composed_constant(config.beta);

  auto [merged, map] = merge_close_radii(instance, config.beta);
  if (merged.levels() > kChainLevels) {
    throw InputError(fmt::format("{} levels remain after merging; at most four are supported", merged.levels()));
  }
  const NukcInstance padded = pad_levels(merged, kChainLevels);
  ledger.merged_radii = padded.radii;
  ledger.stages.push_back({"merge", fmt::format("beta {}", config.beta), clock.lap()});

  PipelineResult out;
  if (instance.space.size() == 0) {
    out.status = PipelineStatus::kSolved;
    out.solution = Solution{std::vector<LevelAssignment>(instance.levels())};
    out.ledger = std::move(ledger);
    return out;
  }

  auto [robust, net] = reduce_to_robust(padded);
  ledger.stages.push_back({"net", fmt::format("+{} on every level", net.radius), clock.lap()});
  PipelineResult chain = run_robust_chain(robust, config, ledger, clock);
  out.status = chain.status;
  if (chain.status == PipelineStatus::kSolved) {
    const Solution four = lift_robust_solution(net, *chain.solution);
    const Solution merged_solution = truncate_levels(four, merged.levels());
    Solution original = expand_merged_solution(map, instance.budgets, merged_solution);
    const auto report = verify_solution(instance, original);
    if (!report.pass()) throw InternalAssertion("pipeline solution does not verify: " + report.failures.front());
    ledger.stages.push_back({"lift", "net expansion and merge re-expansion", clock.lap()});
    std::array<double, 4> r{};
    std::copy(padded.radii.begin(), padded.radii.end(), r.begin());
    fill_realized(ledger, map, composed_bounds(r), original, report);
    out.solution = std::move(original);
  }
  out.ledger = std::move(ledger);
  return out;
}

PipelineResult solve_robust(const RobustInstance& instance, const PipelineConfig& config) {
  if (auto v = validate_instance(instance); !v.empty()) throw InputError("invalid instance: " + v.front());
  if (instance.restriction) throw InputError("robust solver does not take a center restriction");
  Stopwatch clock;
  DilationLedger ledger;
  ledger.composed_constant = composed_constant(config.beta);
  auto [merged, map] = merge_close_radii(instance, config.beta);
  if (merged.levels() > 3) throw InputError("at most three robust levels are supported after merging");
  const RobustInstance padded = pad_levels(merged, 3);
  ledger.merged_radii = padded.radii;
  ledger.stages.push_back({"merge", fmt::format("beta {}", config.beta), clock.lap()});

  PipelineResult out = run_robust_chain(padded, config, ledger, clock);
  if (out.status == PipelineStatus::kSolved) {
    Solution original = expand_merged_solution(map, instance.budgets, truncate_levels(*out.solution, merged.levels()));
    const auto report = verify_solution(instance, original);
    if (!report.pass()) throw InternalAssertion("robust solution does not verify: " + report.failures.front());
    // The three-level chain is the four-level one with a zero bottom radius.
    std::array<double, 4> r{padded.radii[0], padded.radii[1], padded.radii[2], 0.0};
    fill_realized(ledger, map, composed_bounds(r), original, report);
    out.solution = std::move(original);
  }
  out.ledger = std::move(ledger);
  return out;
}

}  // namespace nukc
