#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topmg/optim.hpp"

namespace topmg {

/// Flat key-value run configuration. Every key can come from a config file
/// (one `key = value` per line, `#` comments) or from the same-named command
/// line flag; flags win. validate() cross-checks all modules before any
/// compute happens.
struct RunConfig {
  // fine grid (finest level) and domain
  index_t nx = 32, ny = 32, nz = 32;
  double lx = 1.0, ly = 1.0, lz = 1.0;

  // hierarchy
  index_t ncc = 2;  // coarse-coarse elements per axis
  index_t sd = 2;   // coarse subdivisions per axis inside a cc element
  index_t lc = 4;   // eigenvectors per coarse element
  index_t lcc = 8;  // eigenvectors per coarse-coarse element
  int sweeps = 1;   // smoother pre/post sweeps

  // material
  int cr = 4;
  double kappa_lo = 1.0;
  double f0 = 1.0;
  int p = 3;

  // boundary: square Dirichlet patch centered on the bottom (z = 0) face
  double td = 100.0;
  double patch_side = 0.1;

  // optimization
  double vstar = 0.05;
  int levels = 1;                 // resolution levels; level l has grid /2^(levels-1-l)
  std::vector<int> iters = {30};  // MMA budget per level, coarsest first
  double move_limit = 0.2;
  double conv_dx = 0.01;

  // linear solver
  std::string precond = "mmg";
  double rtol = 1e-6;
  int maxit = 10000;

  // execution
  int threads = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";

  // benchmark harness
  std::vector<int> bench_crs = {1, 2, 3, 4, 5, 6};
  std::vector<std::string> bench_preconds = {"mmg", "jacobi"};
  std::uint64_t seed = 20240501;

  void set_key(const std::string& key, const std::string& value);
  void validate() const;

  std::vector<GridSpec> schedule() const;  // coarsest to finest
  MaterialModel material() const;
  BoundarySpec boundary() const;
  OptimConfig optim_config() const;
  PrecondKind precond_kind() const { return parse_precond_kind(precond); }

  /// Human-readable resolved parameter listing (used by --dry-run).
  std::string describe() const;
};

RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& line);

}  // namespace topmg
