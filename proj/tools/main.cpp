// Command-line driver: topology optimization runs, the contrast-robustness
// benchmark harness, and config validation (--dry-run).
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "topmg/bench.hpp"
#include "topmg/config.hpp"
#include "topmg/io.hpp"
#include "topmg/parallel.hpp"
#include "topmg/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int run_optimize_mode(const topmg::RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  topmg::OptimizeResult result =
      topmg::optimize(cfg.optim_config(), cfg.material(), cfg.boundary());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const fs::path out(cfg.out_dir);
  topmg::write_trajectory_csv(result.trajectory, (out / "trajectory.csv").string());
  topmg::write_timings_csv(result.trajectory, (out / "timings.csv").string());

  if (result.failed) {
    std::cerr << "solver failure: " << result.failure_message
              << " (partial trajectory written to " << (out / "trajectory.csv").string()
              << ")\n";
    return kExitSolver;
  }

  topmg::write_vtk_cell_scalars(result.design.grid, result.design.values,
                                "design", (out / "design.vtk").string());
  topmg::write_vtk_cell_scalars(result.design.grid, result.temperature,
                                "temperature", (out / "temperature.vtk").string());

  std::printf("optimization finished in %.1f s\n", elapsed);
  std::printf("  levels              : %d\n",
              result.trajectory.empty() ? 1 : result.trajectory.back().level + 1);
  std::printf("  MMA iterations      : %zu\n", result.trajectory.size());
  if (!result.trajectory.empty())
    std::printf("  initial mean temp   : %.4f\n", result.trajectory.front().cost);
  std::printf("  final mean temp     : %.4f\n", result.final_cost);
  std::printf("  volume fraction     : %.6f\n", result.design.volume_fraction());
  std::printf("  linear iterations   : %ld\n", result.total_linear_iterations);
  std::printf("  artifacts           : %s, %s, %s\n",
              (out / "design.vtk").string().c_str(),
              (out / "temperature.vtk").string().c_str(),
              (out / "trajectory.csv").string().c_str());
  return kExitOk;
}

int run_bench_mode(const topmg::RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const std::vector<topmg::BenchRow> rows =
      topmg::run_bench(cfg, cfg.bench_crs, cfg.bench_preconds);
  const fs::path out(cfg.out_dir);
  topmg::write_bench_csv(rows, (out / "bench.csv").string());
  const std::string table = topmg::format_bench_table(rows);
  {
    std::ofstream table_file((out / "bench_table.txt").string());
    table_file << table;
  }
  std::cout << table;
  std::printf("bench report: %s, %s\n", (out / "bench.csv").string().c_str(),
              (out / "bench_table.txt").string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-D heat-conduction topology optimization with a multiscale "
               "multigrid preconditioned CG solver"};

  std::string config_path;
  bool dry_run = false;
  bool bench = false;

  // flag overrides are applied on top of the config file, so only the flags
  // the user actually passed may touch the config
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add_override = [&](const std::string& key) {
    return [&overrides, key](const std::string& value) {
      overrides.emplace_back(key, value);
    };
  };

  app.add_option("--config", config_path, "Config file (key = value lines)");
  app.add_flag("--dry-run", dry_run,
               "Validate the configuration, print it, and exit");
  app.add_flag("--bench", bench, "Run the contrast-robustness benchmark");

  for (const char* key :
       {"nx", "ny", "nz", "lx", "ly", "lz", "ncc", "sd", "lc", "lcc",
        "sweeps", "cr", "kappa_lo", "f0", "p", "td", "patch_side", "vstar",
        "levels", "iters", "move_limit", "conv_dx", "precond", "rtol",
        "maxit", "threads", "seed", "bench_crs", "bench_preconds", "out_dir"}) {
    std::string flag = std::string("--") + key;
    for (char& c : flag)
      if (c == '_') c = '-';
    app.add_option_function<std::string>(flag, add_override(key));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    topmg::RunConfig cfg;
    if (!config_path.empty()) cfg = topmg::parse_config_file(config_path);
    for (const auto& [key, value] : overrides) cfg.set_key(key, value);
    cfg.validate();
    topmg::set_num_threads(cfg.threads);

    if (dry_run) {
      std::cout << cfg.describe();
      return kExitOk;
    }
    return bench ? run_bench_mode(cfg) : run_optimize_mode(cfg);
  } catch (const topmg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const topmg::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
