#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "nukc/colorful_reduction.hpp"
#include "nukc/errors.hpp"
#include "nukc/exact.hpp"
#include "nukc/json_io.hpp"
#include "nukc/net_reduction.hpp"
#include "nukc/pipeline.hpp"
#include "nukc/self_coverage.hpp"
#include "nukc/ws_dp.hpp"

namespace {

using namespace nukc;

constexpr int kExitSolved = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitAssertion = 4;

void emit(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

template <typename T>
const T& expect_kind(const Instance& inst, const char* what) {
  if (const auto* p = std::get_if<T>(&inst)) return *p;
  throw InputError(fmt::format("instance kind does not match --variant {}", what));
}

Json cut_to_json(const Cut& cut) {
  Json j;
  j["kind"] = cut_kind_name(cut.kind);
  j["normal"] = std::vector<double>(cut.halfspace.normal.data(), cut.halfspace.normal.data() + cut.halfspace.normal.size());
  j["offset"] = cut.halfspace.offset;
  return j;
}

struct SolveArgs {
  std::string variant = "nukc4";
  std::string input;
  std::string output;
  std::string trace;
  double beta = default_beta();
  double epsilon = 1e-6;
  long iteration_cap = 0;
  int threads = 1;
  bool prune = false;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = instance_from_json(read_json_file(a.input));
  std::optional<Solution> solution;
  std::optional<DilationLedger> ledger;
  bool capped = false;

  std::ofstream trace;
  PipelineConfig config;
  config.beta = a.beta;
  config.epsilon = a.epsilon;
  config.iteration_cap = a.iteration_cap;
  config.threads = a.threads;
  config.prune_far_centers = a.prune;
  if (!a.trace.empty()) {
    trace.open(a.trace);
    if (!trace) throw InputError("cannot open trace file " + a.trace);
    config.trace = [&trace](const TraceRecord& r) {
      Json j;
      j["iteration"] = r.iteration;
      j["query"] = r.query_hash;
      j["outcome"] = r.outcome;
      if (r.cut) j["cut"] = cut_to_json(*r.cut);
      trace << j.dump() << "\n";
    };
  }

  if (a.variant == "nukc4" || a.variant == "robust") {
    const PipelineResult res = a.variant == "nukc4" ? solve_4nukc(expect_kind<NukcInstance>(inst, "nukc4"), config)
                                                    : solve_robust(expect_kind<RobustInstance>(inst, "robust"), config);
    solution = res.solution;
    ledger = res.ledger;
    capped = res.status == PipelineStatus::kIterationCap;
  } else if (a.variant == "colorful") {
    solution = solve_colorful(expect_kind<ColorfulInstance>(inst, "colorful"));
  } else if (a.variant == "ws-colorful") {
    const auto& c = expect_kind<ColorfulInstance>(inst, "ws-colorful");
    if (!c.restriction) throw InputError("ws-colorful needs a center_restriction");
    auto res = solve_ws(c, *c.restriction);
    if (res.feasible) solution = std::move(res.witness);
  } else {
    throw InputError("unknown variant " + a.variant);
  }

  if (!solution) {
    Json j;
    j["status"] = capped ? "iteration_cap" : "infeasible";
    if (ledger) j["ledger"] = ledger_to_json(*ledger);
    emit(a.output, j);
    return kExitInfeasible;
  }
  Json j = solution_to_json(*solution, verify_solution(inst, *solution));
  if (ledger) j["ledger"] = ledger_to_json(*ledger);
  emit(a.output, j);
  return kExitSolved;
}

int run_brute(const std::string& input, const std::string& output, double dilation, double budget) {
  const Instance inst = instance_from_json(read_json_file(input));
  BruteOptions opts;
  opts.dilation = dilation;
  opts.tuple_budget = budget;
  const BruteResult res = brute_solve(inst, opts);
  Json j;
  j["feasible"] = res.feasible;
  j["best_coverage"] = res.best_coverage;
  j["tuples"] = res.tuples;
  if (res.feasible) j["solution"] = solution_to_json(res.witness);
  emit(output, j);
  return res.feasible ? kExitSolved : kExitInfeasible;
}

int run_verify(const std::string& instance_path, const std::string& solution_path, double dilation) {
  const Instance inst = instance_from_json(read_json_file(instance_path));
  const Solution sol = solution_from_json(read_json_file(solution_path));
  const auto report = verify_solution(inst, sol, dilation);
  emit("", report_to_json(report));
  return report.pass() ? kExitSolved : kExitInfeasible;
}

int run_reduce(const std::string& step, const std::string& input, const std::string& output) {
  const Instance inst = instance_from_json(read_json_file(input));
  Json j;
  if (step == "net") {
    auto [robust, ctx] = reduce_to_robust(expect_kind<NukcInstance>(inst, "net"));
    j["instance"] = instance_to_json(robust);
    j["net"] = ctx.net;
    j["assignment"] = ctx.assignment;
    j["net_radius"] = ctx.radius;
  } else if (step == "colorful") {
    auto [migrated, ctx] = phase1(expect_kind<RobustInstance>(inst, "colorful"));
    j["greedy"] = greedy_to_json(ctx.greedy);
    j["migrated"] = instance_to_json(migrated);
    Json splits = Json::array();
    for (const auto& s : phase2_split(migrated)) splits.push_back(instance_to_json(s.instance));
    j["splits"] = std::move(splits);
  } else if (step == "selfcov") {
    auto [mid, blue] = phase1_blue(expect_kind<ColorfulInstance>(inst, "selfcov"));
    auto [fin, red] = phase2_red(mid, blue);
    j["blue_greedy"] = greedy_to_json(blue.greedy);
    j["intermediate"] = instance_to_json(mid);
    j["red_greedy"] = greedy_to_json(red.greedy);
    j["instance"] = instance_to_json(fin);
  } else {
    throw InputError("unknown step " + step);
  }
  emit(output, j);
  return kExitSolved;
}

struct GenArgs {
  std::string variant = "nukc4";
  std::uint64_t seed = 1;
  PlantParams params;
  std::string output;
  std::string witness;
};

PlantVariant plant_variant(const std::string& v) {
  if (v == "nukc4" || v == "nukc") return PlantVariant::kNukc;
  if (v == "robust") return PlantVariant::kRobust;
  if (v == "colorful") return PlantVariant::kColorful;
  throw InputError("unknown variant " + v);
}

int run_gen(const GenArgs& a) {
  const auto planted = plant_instance(a.seed, plant_variant(a.variant), a.params);
  emit(a.output, instance_to_json(planted.instance));
  if (!a.witness.empty()) emit(a.witness, solution_to_json(planted.witness));
  return kExitSolved;
}

double stage_ms(const DilationLedger& ledger, const std::string& name) {
  double ms = 0;
  for (const auto& s : ledger.stages) {
    if (s.name == name) ms += s.millis;
  }
  return ms;
}

int run_bench(const GenArgs& a, int seeds, const std::string& output, int threads) {
  std::ofstream file;
  if (!output.empty() && output != "-") {
    file.open(output);
    if (!file) throw InputError("cannot open " + output);
  }
  std::ostream& out = file.is_open() ? file : std::cout;
  out << "seed,n,t,ms_merge,ms_net,ms_round_or_cut,ms_lift,iterations,dilation_1,dilation_2,dilation_3,dilation_4,outcome\n";
  PipelineConfig config;
  config.threads = threads;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = a.seed + s;
    const auto planted = plant_instance(seed, PlantVariant::kNukc, a.params);
    const auto& inst = std::get<NukcInstance>(planted.instance);
    const PipelineResult res = solve_4nukc(inst, config);
    std::vector<std::string> dil(4, "");
    for (std::size_t i = 0; i < res.ledger.realized_dilation.size() && i < 4; ++i) {
      dil[i] = fmt::format("{:.4f}", res.ledger.realized_dilation[i]);
    }
    const char* outcome = res.status == PipelineStatus::kSolved       ? "solved"
                          : res.status == PipelineStatus::kInfeasible ? "infeasible"
                                                                      : "iteration_cap";
    out << fmt::format("{},{},{},{:.3f},{:.3f},{:.3f},{:.3f},{},{},{}\n", seed, inst.space.size(), inst.levels(),
                       stage_ms(res.ledger, "merge"), stage_ms(res.ledger, "net"),
                       stage_ms(res.ledger, "round-or-cut"), stage_ms(res.ledger, "lift"), res.ledger.iterations,
                       fmt::join(dil, ","), outcome);
  }
  return kExitSolved;
}

void add_plant_options(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("--seed", g.seed, "first seed");
  cmd->add_option("--n", g.params.n, "number of points");
  cmd->add_option("--levels", g.params.levels, "number of radii");
  cmd->add_option("--outliers", g.params.outliers, "points outside every planted ball");
  cmd->add_option("--max-budget", g.params.max_budget);
  cmd->add_option("--separation", g.params.separation_ratio, "minimum ratio between consecutive radii");
  cmd->add_option("--top-radius", g.params.top_radius_max);
  cmd->add_option("--bottom-radius", g.params.bottom_radius_max);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-uniform k-center solver"};
  app.require_subcommand(1);

  GenArgs gen;
  gen.params.levels = 4;
  gen.params.separation_ratio = 30;
  auto* gen_cmd = app.add_subcommand("gen", "write a planted instance");
  gen_cmd->add_option("--variant", gen.variant)->check(CLI::IsMember({"nukc4", "nukc", "robust", "colorful"}));
  gen_cmd->add_option("--output,-o", gen.output);
  gen_cmd->add_option("--witness", gen.witness, "also write the planted solution");
  add_plant_options(gen_cmd, gen);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "run a solver");
  solve_cmd->add_option("--variant", solve.variant)->check(CLI::IsMember({"nukc4", "robust", "colorful", "ws-colorful"}));
  solve_cmd->add_option("--input,-i", solve.input)->required();
  solve_cmd->add_option("--output,-o", solve.output);
  solve_cmd->add_option("--trace", solve.trace, "JSON lines, one per oracle call");
  solve_cmd->add_option("--beta", solve.beta);
  solve_cmd->add_option("--epsilon", solve.epsilon);
  solve_cmd->add_option("--iteration-cap", solve.iteration_cap);
  solve_cmd->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--prune-far-centers", solve.prune);

  std::string brute_in, brute_out;
  double dilation = 1.0, tuple_budget = 1e7;
  auto* brute_cmd = app.add_subcommand("brute", "exhaustive search");
  brute_cmd->add_option("--input,-i", brute_in)->required();
  brute_cmd->add_option("--output,-o", brute_out);
  brute_cmd->add_option("--dilation", dilation);
  brute_cmd->add_option("--budget", tuple_budget, "maximum number of center tuples");

  std::string ver_inst, ver_sol;
  double ver_dilation = kUnlimited;
  auto* verify_cmd = app.add_subcommand("verify", "check a solution");
  verify_cmd->add_option("--instance", ver_inst)->required();
  verify_cmd->add_option("--solution", ver_sol)->required();
  verify_cmd->add_option("--dilation", ver_dilation, "largest allowed realized/prescribed ratio");

  std::string step = "net", red_in, red_out;
  auto* reduce_cmd = app.add_subcommand("reduce", "dump a reduction's intermediates");
  reduce_cmd->add_option("--step", step)->check(CLI::IsMember({"net", "colorful", "selfcov"}));
  reduce_cmd->add_option("--input,-i", red_in)->required();
  reduce_cmd->add_option("--output,-o", red_out);

  GenArgs bench;
  bench.params.levels = 4;
  bench.params.n = 20;
  bench.params.separation_ratio = 30;
  int seeds = 10, bench_threads = 1;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "CSV over a seed sweep of planted instances");
  add_plant_options(bench_cmd, bench);
  bench_cmd->add_option("--seeds", seeds);
  bench_cmd->add_option("--threads", bench_threads)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output,-o", bench_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*brute_cmd) return run_brute(brute_in, brute_out, dilation, tuple_budget);
    if (*verify_cmd) return run_verify(ver_inst, ver_sol, ver_dilation);
    if (*reduce_cmd) return run_reduce(step, red_in, red_out);
    if (*bench_cmd) return run_bench(bench, seeds, bench_out, bench_threads);
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "search too large: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitInvalid;
}
