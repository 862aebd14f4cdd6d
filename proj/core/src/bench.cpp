#include "topmg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "topmg/rng.hpp"

namespace topmg {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::vector<BenchRow> run_bench(const RunConfig& cfg,
                                const std::vector<int>& crs,
                                const std::vector<std::string>& preconds) {
  const GridSpec grid(cfg.nx, cfg.ny, cfg.nz, cfg.lx, cfg.ly, cfg.lz);
  const HierarchicalGrid hgrid =
      build_hierarchy(grid, {cfg.ncc, cfg.ncc, cfg.ncc}, cfg.sd);
  const BoundarySpec bc = cfg.boundary();
  const DesignField design = frozen_bench_design(grid, cfg.vstar, cfg.seed);

  MmgOptions mmg;
  mmg.num_local_basis = cfg.lc;
  mmg.num_cc_basis = cfg.lcc;
  mmg.smoother_sweeps = cfg.sweeps;

  const PcgOptions pcg_opts{cfg.rtol, cfg.maxit};
  std::vector<BenchRow> rows;

  for (int cr : crs) {
    const MaterialModel material =
        MaterialModel::from_contrast(cr, cfg.kappa_lo, cfg.f0, cfg.p);
    const std::vector<double> kappa = conductivity(design, material);
    const std::vector<double> source = heat_source(design, material);
    const AssembledSystem sys = assemble_system(grid, kappa, source, bc);
    const std::vector<double> rhs2 = adjoint_rhs(grid.num_cells());

    for (const std::string& name : preconds) {
      const PrecondKind kind = parse_precond_kind(name);
      BenchRow base;
      base.preconditioner = name;
      base.cr = cr;
      base.dof = grid.num_cells();

      auto t0 = std::chrono::steady_clock::now();
      std::unique_ptr<Preconditioner> precond =
          make_preconditioner(kind, sys, hgrid, mmg);
      BenchRow setup = base;
      setup.phase = "setup";
      setup.seconds = seconds_since(t0);
      rows.push_back(setup);

      for (const auto* rhs : {&sys.rhs, &rhs2}) {
        BenchRow solve = base;
        solve.phase = rhs == &sys.rhs ? "ls1" : "ls2";
        try {
          const PcgResult result = pcg(sys.matrix, *rhs, *precond, pcg_opts);
          solve.seconds = result.report.solve_seconds;
          if (result.report.converged) {
            solve.iterations = result.report.iterations;
          } else {
            solve.iterations = -1;
            solve.dnf = true;
          }
        } catch (const SolverError&) {
          solve.iterations = -1;
          solve.dnf = true;
        }
        rows.push_back(solve);
      }
    }
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::vector<int> crs;
  std::vector<std::string> preconds;
  for (const BenchRow& r : rows) {
    if (std::find(crs.begin(), crs.end(), r.cr) == crs.end()) crs.push_back(r.cr);
    if (std::find(preconds.begin(), preconds.end(), r.preconditioner) ==
        preconds.end())
      preconds.push_back(r.preconditioner);
  }

  auto find_row = [&](int cr, const std::string& pc,
                      const std::string& phase) -> const BenchRow* {
    for (const BenchRow& r : rows)
      if (r.cr == cr && r.preconditioner == pc && r.phase == phase) return &r;
    return nullptr;
  };

  std::ostringstream out;
  char buf[96];
  for (int cr : crs) {
    index_t dof = 0;
    for (const BenchRow& r : rows)
      if (r.cr == cr) { dof = r.dof; break; }
    out << "contrast cr = " << cr << " (dof = " << dof << ")\n";
    out << "  " << std::string(22, ' ');
    for (const auto& pc : preconds) {
      std::snprintf(buf, sizeof(buf), " %16s", pc.c_str());
      out << buf;
    }
    out << "\n";

    const char* phases[3] = {"setup", "ls1", "ls2"};
    const char* labels[3] = {"Set-up", "Solve LS1", "Solve LS2"};
    for (int ph = 0; ph < 3; ++ph) {
      std::snprintf(buf, sizeof(buf), "  %-22s", labels[ph]);
      out << buf;
      for (const auto& pc : preconds) {
        const BenchRow* r = find_row(cr, pc, phases[ph]);
        if (!r) { out << std::string(17, ' '); continue; }
        if (ph == 0)
          std::snprintf(buf, sizeof(buf), " %16.1f", r->seconds);
        else if (r->dnf)
          std::snprintf(buf, sizeof(buf), " %16s", "DNF");
        else {
          char inner[48];
          std::snprintf(inner, sizeof(inner), "%.1f(%d)", r->seconds,
                        r->iterations);
          std::snprintf(buf, sizeof(buf), " %16s", inner);
        }
        out << buf;
      }
      out << "\n";
    }

    // totals relative to the first preconditioner column
    double base_total = 0.0;
    bool base_ok = true;
    for (int ph = 0; ph < 3; ++ph) {
      const BenchRow* r = find_row(cr, preconds.front(), phases[ph]);
      if (!r || r->dnf) base_ok = false;
      else base_total += r->seconds;
    }
    std::snprintf(buf, sizeof(buf), "  %-22s", "Relative time in total");
    out << buf;
    for (const auto& pc : preconds) {
      double total = 0.0;
      bool ok = base_ok;
      for (int ph = 0; ph < 3; ++ph) {
        const BenchRow* r = find_row(cr, pc, phases[ph]);
        if (!r || r->dnf) ok = false;
        else total += r->seconds;
      }
      if (!ok || base_total <= 0.0)
        std::snprintf(buf, sizeof(buf), " %16s", "--");
      else {
        char inner[48];
        std::snprintf(inner, sizeof(inner), "%.1f%%", 100.0 * total / base_total);
        std::snprintf(buf, sizeof(buf), " %16s", inner);
      }
      out << buf;
    }
    out << "\n\n";
  }
  return out.str();
}

}  // namespace topmg
