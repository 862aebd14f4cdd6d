#pragma once

#include <array>
#include <vector>

#include "topmg/grid.hpp"
#include "topmg/sparse.hpp"

namespace topmg {

/// Harmonic face conductivity 2*k1*k2/(k1+k2). Symmetric in its arguments and
/// bounded by 2*min(k1,k2). Throws on nonpositive input.
double face_transmissibility(double kappa_left, double kappa_right);

/// TPFA system A t = f on a structured grid. The matrix couples each pair of
/// face-adjacent cells with T_F = kappa_F * area / h; Dirichlet boundary faces
/// add a half-cell transmissibility 2 * kappa_cell * area / h to the diagonal
/// and T_F * T_D to the right-hand side; Neumann faces contribute nothing.
/// The right-hand side also carries f_cell * cell_volume.
struct AssembledSystem {
  GridSpec grid;
  BoundarySpec boundary;
  SparseOperator matrix;
  std::vector<double> rhs;
  std::vector<double> kappa;
};

struct AssemblyOptions {
  /// When true (default), assembly throws ConfigError if no boundary face is
  /// Dirichlet, since the operator is then singular.
  bool require_dirichlet = true;
};

AssembledSystem assemble_system(const GridSpec& grid,
                                const std::vector<double>& kappa,
                                const std::vector<double>& source,
                                const BoundarySpec& bc,
                                const AssemblyOptions& opts = {});

/// Face-normal fluxes per unit area, oriented along +x/+y/+z. x-faces are
/// indexed i in [0, nx] at fixed (j,k) (i = 0 and i = nx are domain boundary
/// faces); y- and z-face arrays are laid out likewise.
struct FaceFluxes {
  std::array<index_t, 3> dims_x{}, dims_y{}, dims_z{};
  std::vector<double> x, y, z;
};

FaceFluxes recover_flux(const AssembledSystem& system,
                        const std::vector<double>& t);

/// Per-cell conservation residual: (sum of outgoing face fluxes * areas)
/// minus f_cell * volume. Zero for the exact solution of the system.
std::vector<double> flux_balance_residual(const AssembledSystem& system,
                                          const FaceFluxes& fluxes,
                                          const std::vector<double>& source);

/// Diagonal of the kappa-weighted mass: entry c = kappa_c * cell_volume.
std::vector<double> weighted_mass_diagonal(const GridSpec& grid,
                                           const std::vector<double>& kappa);

}  // namespace topmg
