#pragma once

#include <string>
#include <vector>

#include "topmg/material.hpp"
#include "topmg/solver.hpp"

namespace topmg {

double mean_temperature(const std::vector<double>& t);

/// Gradient of the mean temperature w.r.t. t: the constant vector 1/M.
std::vector<double> adjoint_rhs(index_t num_cells);

/// Adjoint sensitivity dc/dx per cell, assembled face-by-face without forming
/// dA/dx. t and u must solve the state and adjoint systems to solver
/// tolerance. Interior faces use the harmonic-mean chain rule
/// d(kappa_F)/d(kappa_c) = (kappa_F/kappa_c)^2 / 2; Dirichlet faces use the
/// half-cell rule, whose rhs lift contributes u_c * dT_F * T_D.
std::vector<double> sensitivity(const DesignField& x, const MaterialModel& m,
                                const AssembledSystem& system,
                                const std::vector<double>& t,
                                const std::vector<double>& u);

struct MmaOptions {
  double move_limit = 0.2;
  double asy_init = 0.5;   // initial asymptote span as a fraction of range
  double asy_incr = 1.2;
  double asy_decr = 0.7;
};

/// Moving-asymptote state for a single-constraint box-bounded problem.
struct MmaState {
  std::vector<double> low, upp;
  std::vector<double> x_prev, x_prev2;
  int iteration = 0;
};

/// One MMA iterate: builds the convex separable approximation at x, solves
/// the single-multiplier dual by bisection, and returns the update clamped to
/// move limits and [xmin, xmax]. The constraint is g(x) <= 0 with value
/// `constraint_value` and gradient `constraint_grad` at x.
std::vector<double> mma_update(MmaState& state, const std::vector<double>& x,
                               const std::vector<double>& grad,
                               double constraint_value,
                               const std::vector<double>& constraint_grad,
                               const MmaOptions& opts, double xmin = 0.0,
                               double xmax = 1.0);

struct OptimConfig {
  double vstar = 0.05;
  std::vector<GridSpec> schedule;      // coarsest to finest
  std::vector<int> iters_per_level;
  double convergence_dx = 0.01;        // stop a level when ||dx||_inf drops below
  MmaOptions mma;

  std::array<index_t, 3> ncc{2, 2, 2};
  index_t sd = 2;
  MmgOptions mmg;
  PrecondKind precond = PrecondKind::Mmg;
  double rtol = 1e-6;
  int maxit = 10000;
};

struct IterationLog {
  int level = 0;
  int iter = 0;
  double cost = 0.0;
  double volume = 0.0;
  int ls1_iters = 0;
  int ls2_iters = 0;
  double setup_seconds = 0.0;
  double ls1_seconds = 0.0;
  double ls2_seconds = 0.0;
};

struct OptimizeResult {
  DesignField design;
  std::vector<double> temperature;  // state solve of the final design
  double final_cost = 0.0;
  std::vector<IterationLog> trajectory;
  bool failed = false;              // a linear solve did not converge
  std::string failure_message;
  long total_linear_iterations = 0; // LS1 + LS2 over all MMA iterations
};

/// The outer loop: uniform initial guess x = vstar, then per level
///   form kappa -> build the preconditioner -> solve state (LS1) and adjoint
///   (LS2) with it -> sensitivities -> MMA update
/// until the level budget or the ||dx||_inf threshold, then prolongate the
/// design to the next finer grid. Ends with one evaluation solve of the final
/// design. On a non-converged linear solve the partial trajectory is returned
/// with failed = true.
OptimizeResult optimize(const OptimConfig& cfg, const MaterialModel& material,
                        const BoundarySpec& boundary);

}  // namespace topmg
