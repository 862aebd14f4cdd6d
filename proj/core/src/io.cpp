#include "topmg/io.hpp"

#include <cstdio>
#include <fstream>

namespace topmg {

void write_vtk_cell_scalars(const GridSpec& grid,
                            const std::vector<double>& field,
                            const std::string& field_name,
                            const std::string& path) {
  if (static_cast<index_t>(field.size()) != grid.num_cells())
    throw std::invalid_argument("write_vtk_cell_scalars: size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  out << "# vtk DataFile Version 3.0\n";
  out << field_name << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << grid.nx + 1 << " " << grid.ny + 1 << " "
      << grid.nz + 1 << "\n";
  out << "ORIGIN 0 0 0\n";
  std::snprintf(buf, sizeof(buf), "SPACING %.9g %.9g %.9g\n", grid.hx(),
                grid.hy(), grid.hz());
  out << buf;
  out << "CELL_DATA " << grid.num_cells() << "\n";
  out << "SCALARS " << field_name << " double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (double v : field) {
    std::snprintf(buf, sizeof(buf), "%.9g\n", v);
    out << buf;
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

void write_trajectory_csv(const std::vector<IterationLog>& trajectory,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "level,iter,cost,volume,ls1_iters,ls2_iters\n";
  char buf[128];
  for (const IterationLog& row : trajectory) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g,%d,%d\n", row.level,
                  row.iter, row.cost, row.volume, row.ls1_iters,
                  row.ls2_iters);
    out << buf;
  }
}

void write_timings_csv(const std::vector<IterationLog>& trajectory,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "level,iter,setup_s,ls1_s,ls2_s\n";
  char buf[128];
  for (const IterationLog& row : trajectory) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.6g,%.6g,%.6g\n", row.level,
                  row.iter, row.setup_seconds, row.ls1_seconds,
                  row.ls2_seconds);
    out << buf;
  }
}

void write_bench_csv(const std::vector<BenchRow>& rows,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "phase,preconditioner,cr,dof,iterations,seconds\n";
  char buf[192];
  for (const BenchRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%lld,%d,%.6g\n",
                  row.phase.c_str(), row.preconditioner.c_str(), row.cr,
                  static_cast<long long>(row.dof), row.iterations,
                  row.seconds);
    out << buf;
  }
}

}  // namespace topmg
