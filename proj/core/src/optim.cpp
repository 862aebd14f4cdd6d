#include "topmg/optim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace topmg {

double mean_temperature(const std::vector<double>& t) {
  double sum = 0.0;
  for (double v : t) sum += v;
  return sum / static_cast<double>(t.size());
}

std::vector<double> adjoint_rhs(index_t num_cells) {
  return std::vector<double>(static_cast<std::size_t>(num_cells),
                             1.0 / static_cast<double>(num_cells));
}

std::vector<double> sensitivity(const DesignField& x, const MaterialModel& m,
                                const AssembledSystem& system,
                                const std::vector<double>& t,
                                const std::vector<double>& u) {
  const GridSpec& g = system.grid;
  const index_t n = g.num_cells();
  if (static_cast<index_t>(t.size()) != n ||
      static_cast<index_t>(u.size()) != n ||
      static_cast<index_t>(x.values.size()) != n)
    throw std::invalid_argument("sensitivity: size mismatch");

  const MaterialDerivatives deriv = material_derivatives(x, m);
  const auto& kappa = system.kappa;
  const double volume = g.cell_volume();
  const double coupling[3] = {g.hy() * g.hz() / g.hx(),
                              g.hx() * g.hz() / g.hy(),
                              g.hx() * g.hy() / g.hz()};
  const index_t stride[3] = {1, g.nx, g.nx * g.ny};
  const index_t n_axis[3] = {g.nx, g.ny, g.nz};
  constexpr Face lo_face[3] = {Face::XLo, Face::YLo, Face::ZLo};
  constexpr Face hi_face[3] = {Face::XHi, Face::YHi, Face::ZHi};

  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  for (index_t k = 0; k < g.nz; ++k)
    for (index_t j = 0; j < g.ny; ++j)
      for (index_t i = 0; i < g.nx; ++i) {
        const index_t c = g.cell(i, j, k);
        const std::size_t cs = static_cast<std::size_t>(c);
        const double dk = deriv.dkappa_dx[cs];
        const index_t ijk[3] = {i, j, k};

        // rhs term: df/dx_c acts on the single entry of cell c
        double value = u[cs] * deriv.dsource_dx[cs] * volume;

        if (dk != 0.0) {
          const double kc = kappa[cs];
          for (int a = 0; a < 3; ++a) {
            // interior faces: dT_F/dx_c = (kappa_F/kappa_c)^2/2 * dk * area/h
            for (int side = 0; side < 2; ++side) {
              const bool exists = side == 0 ? ijk[a] > 0 : ijk[a] < n_axis[a] - 1;
              if (!exists) continue;
              const index_t nb = side == 0 ? c - stride[a] : c + stride[a];
              const std::size_t ns = static_cast<std::size_t>(nb);
              const double kf = face_transmissibility(kc, kappa[ns]);
              const double ratio = kf / kc;
              const double dt = 0.5 * ratio * ratio * dk * coupling[a];
              value -= dt * (u[cs] - u[ns]) * (t[cs] - t[ns]);
            }
            // Dirichlet faces: T_F = 2 kappa_c area/h, both in A and in rhs
            double td = 0.0;
            if (system.boundary.dirichlet_value(g, i, j, k, lo_face[a], &td)) {
              const double dt = 2.0 * coupling[a] * dk;
              value += dt * u[cs] * (td - t[cs]);
            }
            if (system.boundary.dirichlet_value(g, i, j, k, hi_face[a], &td)) {
              const double dt = 2.0 * coupling[a] * dk;
              value += dt * u[cs] * (td - t[cs]);
            }
          }
        }
        grad[cs] = value;
      }
  return grad;
}

namespace {

struct Subproblem {
  // componentwise data of the separable approximation at the current iterate
  std::vector<double> low, upp, alpha, beta, p0, q0, p1, q1;
  double r1 = 0.0;  // constant part of the constraint approximation
  std::vector<double> x;
};

// Minimizer of (p0+l*p1)/(u-xi) + (q0+l*q1)/(xi-l) over [alpha, beta].
double primal_from_multiplier(const Subproblem& sub, std::size_t j,
                              double lambda) {
  const double pj = sub.p0[j] + lambda * sub.p1[j];
  const double qj = sub.q0[j] + lambda * sub.q1[j];
  double xi;
  if (pj <= 0.0 && qj <= 0.0) {
    xi = sub.x[j];  // flat objective: stay put
  } else {
    const double sp = std::sqrt(pj), sq = std::sqrt(qj);
    xi = (sub.low[j] * sp + sub.upp[j] * sq) / (sp + sq);
  }
  return std::clamp(xi, sub.alpha[j], sub.beta[j]);
}

double constraint_at(const Subproblem& sub, double lambda) {
  double value = sub.r1;
  for (std::size_t j = 0; j < sub.x.size(); ++j) {
    const double xi = primal_from_multiplier(sub, j, lambda);
    value += sub.p1[j] / (sub.upp[j] - xi) + sub.q1[j] / (xi - sub.low[j]);
  }
  return value;
}

}  // namespace

std::vector<double> mma_update(MmaState& state, const std::vector<double>& x,
                               const std::vector<double>& grad,
                               double constraint_value,
                               const std::vector<double>& constraint_grad,
                               const MmaOptions& opts, double xmin,
                               double xmax) {
  const std::size_t n = x.size();
  if (grad.size() != n || constraint_grad.size() != n)
    throw std::invalid_argument("mma_update: size mismatch");
  const double range = xmax - xmin;

  if (state.low.size() != n) {
    state.low.assign(n, 0.0);
    state.upp.assign(n, 0.0);
    state.x_prev.assign(n, 0.0);
    state.x_prev2.assign(n, 0.0);
    state.iteration = 0;
  }

  // moving asymptotes: widen when the iterate oscillates in the same
  // direction twice, shrink when it flips sign
  if (state.iteration < 2) {
    for (std::size_t j = 0; j < n; ++j) {
      state.low[j] = x[j] - opts.asy_init * range;
      state.upp[j] = x[j] + opts.asy_init * range;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double trend =
          (x[j] - state.x_prev[j]) * (state.x_prev[j] - state.x_prev2[j]);
      double factor = 1.0;
      if (trend > 0.0) factor = opts.asy_incr;
      else if (trend < 0.0) factor = opts.asy_decr;
      state.low[j] = x[j] - factor * (state.x_prev[j] - state.low[j]);
      state.upp[j] = x[j] + factor * (state.upp[j] - state.x_prev[j]);
      // collapse/blow-up guards
      state.low[j] = std::max(state.low[j], x[j] - 10.0 * range);
      state.low[j] = std::min(state.low[j], x[j] - 0.01 * range);
      state.upp[j] = std::min(state.upp[j], x[j] + 10.0 * range);
      state.upp[j] = std::max(state.upp[j], x[j] + 0.01 * range);
    }
  }

  Subproblem sub;
  sub.x = x;
  sub.low = state.low;
  sub.upp = state.upp;
  sub.alpha.resize(n);
  sub.beta.resize(n);
  sub.p0.resize(n);
  sub.q0.resize(n);
  sub.p1.resize(n);
  sub.q1.resize(n);
  sub.r1 = constraint_value;
  for (std::size_t j = 0; j < n; ++j) {
    sub.alpha[j] = std::max({xmin, sub.low[j] + 0.1 * (x[j] - sub.low[j]),
                             x[j] - opts.move_limit * range});
    sub.beta[j] = std::min({xmax, sub.upp[j] - 0.1 * (sub.upp[j] - x[j]),
                            x[j] + opts.move_limit * range});
    const double du = sub.upp[j] - x[j];
    const double dl = x[j] - sub.low[j];
    sub.p0[j] = du * du * std::max(grad[j], 0.0);
    sub.q0[j] = dl * dl * std::max(-grad[j], 0.0);
    sub.p1[j] = du * du * std::max(constraint_grad[j], 0.0);
    sub.q1[j] = dl * dl * std::max(-constraint_grad[j], 0.0);
    sub.r1 -= sub.p1[j] / du + sub.q1[j] / dl;
  }

  // dual: the constraint approximation is nonincreasing in the multiplier
  double lambda = 0.0;
  if (constraint_at(sub, 0.0) > 0.0) {
    double lo = 0.0, hi = 1.0;
    int expand = 0;
    while (constraint_at(sub, hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++expand > 80) {
        std::ostringstream msg;
        msg << "mma_update: multiplier bisection failed, bracket [" << lo
            << ", " << hi << "]";
        throw SolverError(msg.str());
      }
    }
    for (int it = 0; it < 128; ++it) {
      lambda = 0.5 * (lo + hi);
      if (constraint_at(sub, lambda) > 0.0) lo = lambda;
      else hi = lambda;
    }
    lambda = hi;  // feasible side of the bracket
  }

  std::vector<double> x_new(n);
  for (std::size_t j = 0; j < n; ++j)
    x_new[j] = primal_from_multiplier(sub, j, lambda);

  state.x_prev2 = state.x_prev;
  state.x_prev = x;
  ++state.iteration;
  return x_new;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

OptimizeResult optimize(const OptimConfig& cfg, const MaterialModel& material,
                        const BoundarySpec& boundary) {
  if (cfg.schedule.empty())
    throw ConfigError("optimize: empty resolution schedule");
  if (cfg.schedule.size() != cfg.iters_per_level.size())
    throw ConfigError("optimize: schedule and iteration budgets disagree");
  if (!(cfg.vstar > 0.0 && cfg.vstar <= 1.0))
    throw ConfigError("optimize: vstar must lie in (0, 1]");

  OptimizeResult result;
  DesignField x(cfg.schedule.front(), cfg.vstar);

  const PcgOptions pcg_opts{cfg.rtol, cfg.maxit};

  auto solve_pair = [&](const DesignField& design, IterationLog* log,
                        std::vector<double>* t_out, std::vector<double>* u_out,
                        AssembledSystem* sys_out) -> bool {
    const auto t_setup = std::chrono::steady_clock::now();
    const std::vector<double> kappa = conductivity(design, material);
    const std::vector<double> source = heat_source(design, material);
    AssembledSystem sys =
        assemble_system(design.grid, kappa, source, boundary);
    HierarchicalGrid hgrid = build_hierarchy(design.grid, cfg.ncc, cfg.sd);
    std::unique_ptr<Preconditioner> precond =
        make_preconditioner(cfg.precond, sys, hgrid, cfg.mmg);
    if (log) log->setup_seconds = seconds_since(t_setup);

    PcgResult ls1 = pcg(sys.matrix, sys.rhs, *precond, pcg_opts);
    if (log) {
      log->ls1_iters = ls1.report.iterations;
      log->ls1_seconds = ls1.report.solve_seconds;
    }
    if (!ls1.report.converged) {
      result.failed = true;
      result.failure_message = "state solve (LS1) did not converge within " +
                               std::to_string(cfg.maxit) + " iterations";
      return false;
    }
    if (u_out) {
      PcgResult ls2 =
          pcg(sys.matrix, adjoint_rhs(design.grid.num_cells()), *precond,
              pcg_opts);
      if (log) {
        log->ls2_iters = ls2.report.iterations;
        log->ls2_seconds = ls2.report.solve_seconds;
      }
      if (!ls2.report.converged) {
        result.failed = true;
        result.failure_message = "adjoint solve (LS2) did not converge within " +
                                 std::to_string(cfg.maxit) + " iterations";
        return false;
      }
      *u_out = std::move(ls2.x);
    }
    *t_out = std::move(ls1.x);
    if (sys_out) *sys_out = std::move(sys);
    return true;
  };

  for (std::size_t level = 0; level < cfg.schedule.size(); ++level) {
    if (level > 0) {
      std::vector<double> prolonged = interpolate_design(
          x.values, cfg.schedule[level - 1], cfg.schedule[level]);
      x = DesignField(cfg.schedule[level], std::move(prolonged));
    }
    MmaState mma_state;
    const index_t m = x.grid.num_cells();
    const std::vector<double> vol_grad(
        static_cast<std::size_t>(m), 1.0 / static_cast<double>(m));

    for (int iter = 1; iter <= cfg.iters_per_level[level]; ++iter) {
      IterationLog log;
      log.level = static_cast<int>(level);
      log.iter = iter;
      log.volume = x.volume_fraction();

      std::vector<double> t, u;
      AssembledSystem sys;
      if (!solve_pair(x, &log, &t, &u, &sys)) {
        result.trajectory.push_back(log);
        result.design = x;
        return result;
      }
      log.cost = mean_temperature(t);

      const std::vector<double> grad = sensitivity(x, material, sys, t, u);
      const double constraint = x.volume_fraction() - cfg.vstar;
      std::vector<double> x_new =
          mma_update(mma_state, x.values, grad, constraint, vol_grad, cfg.mma);
      for (double& v : x_new) v = std::clamp(v, 0.0, 1.0);

      double dx_inf = 0.0;
      for (std::size_t j = 0; j < x_new.size(); ++j)
        dx_inf = std::max(dx_inf, std::abs(x_new[j] - x.values[j]));
      x.values = std::move(x_new);

      result.trajectory.push_back(log);
      result.total_linear_iterations += log.ls1_iters + log.ls2_iters;
      if (dx_inf < cfg.convergence_dx) break;
    }
  }

  // evaluation solve of the final design (also the reported temperature)
  IterationLog final_log;
  final_log.level = static_cast<int>(cfg.schedule.size()) - 1;
  std::vector<double> t;
  if (!solve_pair(x, &final_log, &t, nullptr, nullptr)) {
    result.design = x;
    return result;
  }
  result.final_cost = mean_temperature(t);
  result.temperature = std::move(t);
  result.design = std::move(x);
  return result;
}

}  // namespace topmg
