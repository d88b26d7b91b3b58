// Command-line front end: evaluates a scenario's constraint residuals,
// covariantizes them back into spacetime components, or reports invariants,
// emitting one CSV stream per invocation.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maxcov/maxcov.hpp"

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("scenario", args.scenario_path, "scenario JSON file")->required();
  cmd->add_option("--points", args.points, "override the scenario's sample point count");
  cmd->add_option("--seed", args.seed, "override the scenario's sample seed");
  cmd->add_option("--tol", args.tol, "override the tolerance applied to every checked row");
  cmd->add_option("--out", args.out_path, "write CSV here instead of stdout");
}

int emit(const maxcov::RunResult& result, const std::string& out_path) {
  if (out_path.empty()) {
    maxcov::write_csv(std::cout, result.rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file \"" << out_path << "\"\n";
      return 2;
    }
    maxcov::write_csv(out, result.rows);
  }
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame-dependent Maxwell constraint checker"};
  app.require_subcommand(1);

  CommonArgs check_args, cov_args, report_args;
  int frame = -1;
  bool oracle = false;

  CLI::App* check = app.add_subcommand(
      "check", "evaluate Gauss and magnetic-flux constraint residuals per frame");
  add_common(check, check_args);
  check->add_option("--frame", frame, "restrict to one frame (0..3; default all)");

  CLI::App* cov = app.add_subcommand(
      "covariantize", "reconstruct spacetime dF and dG - J from frame constraint data");
  add_common(cov, cov_args);
  cov->add_flag("--oracle", oracle, "also emit deltas against direct exterior derivatives");

  CLI::App* report =
      app.add_subcommand("report", "tabulate invariants and integral consistency checks");
  add_common(report, report_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      const auto cfg = maxcov::load_scenario(check_args.scenario_path);
      maxcov::RunOptions opt;
      opt.frame = frame;
      opt.points = check_args.points;
      opt.seed = check_args.seed;
      opt.tol = check_args.tol;
      return emit(maxcov::run_check(cfg, opt), check_args.out_path);
    }
    if (cov->parsed()) {
      const auto cfg = maxcov::load_scenario(cov_args.scenario_path);
      maxcov::RunOptions opt;
      opt.points = cov_args.points;
      opt.seed = cov_args.seed;
      opt.tol = cov_args.tol;
      opt.oracle = oracle;
      return emit(maxcov::run_covariantize(cfg, opt), cov_args.out_path);
    }
    const auto cfg = maxcov::load_scenario(report_args.scenario_path);
    maxcov::RunOptions opt;
    opt.points = report_args.points;
    opt.seed = report_args.seed;
    opt.tol = report_args.tol;
    return emit(maxcov::run_report(cfg, opt), report_args.out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
