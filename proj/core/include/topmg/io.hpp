#pragma once

#include <string>
#include <vector>

#include "topmg/grid.hpp"
#include "topmg/optim.hpp"
#include "topmg/solver.hpp"

namespace topmg {

/// Legacy VTK STRUCTURED_POINTS ASCII writer for one per-cell scalar array:
/// point dimensions (nx+1, ny+1, nz+1), spacing (hx, hy, hz), CELL_DATA with
/// a single SCALARS field, values printed with 9 significant digits.
void write_vtk_cell_scalars(const GridSpec& grid,
                            const std::vector<double>& field,
                            const std::string& field_name,
                            const std::string& path);

/// Deterministic trajectory CSV: level,iter,cost,volume,ls1_iters,ls2_iters.
/// Wall-clock timings go to a separate file so this one is byte-identical
/// across repeated runs of the same configuration.
void write_trajectory_csv(const std::vector<IterationLog>& trajectory,
                          const std::string& path);

/// Timing CSV: level,iter,setup_s,ls1_s,ls2_s.
void write_timings_csv(const std::vector<IterationLog>& trajectory,
                       const std::string& path);

struct BenchRow {
  std::string phase;  // "setup", "ls1", "ls2"
  std::string preconditioner;
  int cr = 0;
  index_t dof = 0;
  int iterations = 0;      // -1 marks a did-not-finish entry
  double seconds = 0.0;
  bool dnf = false;
};

/// Bench CSV: phase,preconditioner,cr,dof,iterations,seconds.
void write_bench_csv(const std::vector<BenchRow>& rows,
                     const std::string& path);

}  // namespace topmg
