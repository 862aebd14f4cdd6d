#include "topmg/fvm.hpp"

#include <cmath>

#include "topmg/parallel.hpp"

namespace topmg {

double face_transmissibility(double kappa_left, double kappa_right) {
  if (!(kappa_left > 0.0) || !(kappa_right > 0.0))
    throw std::invalid_argument(
        "face_transmissibility: conductivities must be positive");
  return 2.0 * kappa_left * kappa_right / (kappa_left + kappa_right);
}

namespace {

struct FaceGeometry {
  // area/h for each axis: (hy*hz)/hx, (hx*hz)/hy, (hx*hy)/hz
  double coupling[3];
};

FaceGeometry face_geometry(const GridSpec& g) {
  const double hx = g.hx(), hy = g.hy(), hz = g.hz();
  return {{hy * hz / hx, hx * hz / hy, hx * hy / hz}};
}

constexpr Face kLoFace[3] = {Face::XLo, Face::YLo, Face::ZLo};
constexpr Face kHiFace[3] = {Face::XHi, Face::YHi, Face::ZHi};

}  // namespace

AssembledSystem assemble_system(const GridSpec& grid,
                                const std::vector<double>& kappa,
                                const std::vector<double>& source,
                                const BoundarySpec& bc,
                                const AssemblyOptions& opts) {
  const index_t m = grid.num_cells();
  if (static_cast<index_t>(kappa.size()) != m ||
      static_cast<index_t>(source.size()) != m)
    throw ConfigError("assemble_system: field sizes do not match grid");
  for (double k : kappa)
    if (!(k > 0.0))
      throw ConfigError("assemble_system: conductivity must be positive");
  bc.validate(grid);
  if (opts.require_dirichlet && bc.count_dirichlet_faces(grid) == 0)
    throw ConfigError(
        "assemble_system: no Dirichlet face on the boundary, the system "
        "would be singular");

  const FaceGeometry geom = face_geometry(grid);
  const double volume = grid.cell_volume();
  const index_t n_axis[3] = {grid.nx, grid.ny, grid.nz};
  const index_t stride[3] = {1, grid.nx, grid.nx * grid.ny};

  // 7-point stencil: build each CSR row independently.
  std::vector<index_t> offsets(static_cast<std::size_t>(m) + 1, 0);
  std::vector<index_t> cols(static_cast<std::size_t>(m) * 7);
  std::vector<double> vals(static_cast<std::size_t>(m) * 7);
  std::vector<double> rhs(static_cast<std::size_t>(m));
  std::vector<index_t> row_len(static_cast<std::size_t>(m));

  parallel_for(0, m, [&](index_t c) {
    const auto ijk = grid.coords(c);
    double diag = 0.0;
    double b = source[static_cast<std::size_t>(c)] * volume;
    index_t row_cols[7];
    double row_vals[7];
    int nn = 0;

    for (int a = 0; a < 3; ++a) {
      // low side
      if (ijk[a] > 0) {
        const index_t nb = c - stride[a];
        const double t = face_transmissibility(
                             kappa[static_cast<std::size_t>(nb)],
                             kappa[static_cast<std::size_t>(c)]) *
                         geom.coupling[a];
        diag += t;
        row_cols[nn] = nb;
        row_vals[nn] = -t;
        ++nn;
      } else {
        double td = 0.0;
        if (bc.dirichlet_value(grid, ijk[0], ijk[1], ijk[2], kLoFace[a], &td)) {
          const double t =
              2.0 * kappa[static_cast<std::size_t>(c)] * geom.coupling[a];
          diag += t;
          b += t * td;
        }
      }
      // high side
      if (ijk[a] < n_axis[a] - 1) {
        const index_t nb = c + stride[a];
        const double t = face_transmissibility(
                             kappa[static_cast<std::size_t>(c)],
                             kappa[static_cast<std::size_t>(nb)]) *
                         geom.coupling[a];
        diag += t;
        row_cols[nn] = nb;
        row_vals[nn] = -t;
        ++nn;
      } else {
        double td = 0.0;
        if (bc.dirichlet_value(grid, ijk[0], ijk[1], ijk[2], kHiFace[a], &td)) {
          const double t =
              2.0 * kappa[static_cast<std::size_t>(c)] * geom.coupling[a];
          diag += t;
          b += t * td;
        }
      }
    }
    row_cols[nn] = c;
    row_vals[nn] = diag;
    ++nn;

    // insertion sort by column; rows are tiny
    for (int i = 1; i < nn; ++i) {
      const index_t ci = row_cols[i];
      const double vi = row_vals[i];
      int j = i - 1;
      while (j >= 0 && row_cols[j] > ci) {
        row_cols[j + 1] = row_cols[j];
        row_vals[j + 1] = row_vals[j];
        --j;
      }
      row_cols[j + 1] = ci;
      row_vals[j + 1] = vi;
    }

    const std::size_t base = static_cast<std::size_t>(c) * 7;
    for (int i = 0; i < nn; ++i) {
      cols[base + static_cast<std::size_t>(i)] = row_cols[i];
      vals[base + static_cast<std::size_t>(i)] = row_vals[i];
    }
    row_len[static_cast<std::size_t>(c)] = nn;
    rhs[static_cast<std::size_t>(c)] = b;
  });

  // compact the fixed-width staging rows
  for (index_t c = 0; c < m; ++c)
    offsets[static_cast<std::size_t>(c) + 1] =
        offsets[static_cast<std::size_t>(c)] +
        row_len[static_cast<std::size_t>(c)];
  std::vector<index_t> cols_out(static_cast<std::size_t>(offsets.back()));
  std::vector<double> vals_out(cols_out.size());
  parallel_for(0, m, [&](index_t c) {
    const std::size_t base = static_cast<std::size_t>(c) * 7;
    index_t slot = offsets[static_cast<std::size_t>(c)];
    for (index_t i = 0; i < row_len[static_cast<std::size_t>(c)]; ++i, ++slot) {
      cols_out[static_cast<std::size_t>(slot)] =
          cols[base + static_cast<std::size_t>(i)];
      vals_out[static_cast<std::size_t>(slot)] =
          vals[base + static_cast<std::size_t>(i)];
    }
  });

  AssembledSystem sys;
  sys.grid = grid;
  sys.boundary = bc;
  sys.matrix = SparseOperator(m, m, std::move(offsets), std::move(cols_out),
                              std::move(vals_out), /*symmetric=*/true);
  sys.rhs = std::move(rhs);
  sys.kappa = kappa;
  return sys;
}

FaceFluxes recover_flux(const AssembledSystem& system,
                        const std::vector<double>& t) {
  const GridSpec& g = system.grid;
  if (static_cast<index_t>(t.size()) != g.num_cells())
    throw std::invalid_argument("recover_flux: vector size mismatch");
  FaceFluxes fl;
  fl.dims_x = {g.nx + 1, g.ny, g.nz};
  fl.dims_y = {g.nx, g.ny + 1, g.nz};
  fl.dims_z = {g.nx, g.ny, g.nz + 1};
  fl.x.assign(static_cast<std::size_t>(fl.dims_x[0] * fl.dims_x[1] * fl.dims_x[2]), 0.0);
  fl.y.assign(static_cast<std::size_t>(fl.dims_y[0] * fl.dims_y[1] * fl.dims_y[2]), 0.0);
  fl.z.assign(static_cast<std::size_t>(fl.dims_z[0] * fl.dims_z[1] * fl.dims_z[2]), 0.0);

  const double h[3] = {g.hx(), g.hy(), g.hz()};
  const auto& kappa = system.kappa;

  auto cell = [&](index_t i, index_t j, index_t k) { return g.cell(i, j, k); };

  // interior faces: v_F = -kappa_F (t_hi - t_lo)/h
  for (index_t k = 0; k < g.nz; ++k)
    for (index_t j = 0; j < g.ny; ++j)
      for (index_t i = 1; i < g.nx; ++i) {
        const index_t lo = cell(i - 1, j, k), hi = cell(i, j, k);
        const double kf = face_transmissibility(
            kappa[static_cast<std::size_t>(lo)], kappa[static_cast<std::size_t>(hi)]);
        fl.x[static_cast<std::size_t>(i + (g.nx + 1) * (j + g.ny * k))] =
            -kf * (t[static_cast<std::size_t>(hi)] - t[static_cast<std::size_t>(lo)]) / h[0];
      }
  for (index_t k = 0; k < g.nz; ++k)
    for (index_t j = 1; j < g.ny; ++j)
      for (index_t i = 0; i < g.nx; ++i) {
        const index_t lo = cell(i, j - 1, k), hi = cell(i, j, k);
        const double kf = face_transmissibility(
            kappa[static_cast<std::size_t>(lo)], kappa[static_cast<std::size_t>(hi)]);
        fl.y[static_cast<std::size_t>(i + g.nx * (j + (g.ny + 1) * k))] =
            -kf * (t[static_cast<std::size_t>(hi)] - t[static_cast<std::size_t>(lo)]) / h[1];
      }
  for (index_t k = 1; k < g.nz; ++k)
    for (index_t j = 0; j < g.ny; ++j)
      for (index_t i = 0; i < g.nx; ++i) {
        const index_t lo = cell(i, j, k - 1), hi = cell(i, j, k);
        const double kf = face_transmissibility(
            kappa[static_cast<std::size_t>(lo)], kappa[static_cast<std::size_t>(hi)]);
        fl.z[static_cast<std::size_t>(i + g.nx * (j + g.ny * k))] =
            -kf * (t[static_cast<std::size_t>(hi)] - t[static_cast<std::size_t>(lo)]) / h[2];
      }

  // Dirichlet boundary faces: half-cell two-point flux against T_D.
  const BoundarySpec& bc = system.boundary;
  for (index_t k = 0; k < g.nz; ++k)
    for (index_t j = 0; j < g.ny; ++j)
      for (index_t i = 0; i < g.nx; ++i) {
        const index_t c = cell(i, j, k);
        const double kc = kappa[static_cast<std::size_t>(c)];
        const double tc = t[static_cast<std::size_t>(c)];
        double td = 0.0;
        if (bc.dirichlet_value(g, i, j, k, Face::XLo, &td))
          fl.x[static_cast<std::size_t>(0 + (g.nx + 1) * (j + g.ny * k))] =
              -kc * (tc - td) / (0.5 * h[0]);
        if (bc.dirichlet_value(g, i, j, k, Face::XHi, &td))
          fl.x[static_cast<std::size_t>(g.nx + (g.nx + 1) * (j + g.ny * k))] =
              -kc * (td - tc) / (0.5 * h[0]);
        if (bc.dirichlet_value(g, i, j, k, Face::YLo, &td))
          fl.y[static_cast<std::size_t>(i + g.nx * (0 + (g.ny + 1) * k))] =
              -kc * (tc - td) / (0.5 * h[1]);
        if (bc.dirichlet_value(g, i, j, k, Face::YHi, &td))
          fl.y[static_cast<std::size_t>(i + g.nx * (g.ny + (g.ny + 1) * k))] =
              -kc * (td - tc) / (0.5 * h[1]);
        if (bc.dirichlet_value(g, i, j, k, Face::ZLo, &td))
          fl.z[static_cast<std::size_t>(i + g.nx * (j + g.ny * 0))] =
              -kc * (tc - td) / (0.5 * h[2]);
        if (bc.dirichlet_value(g, i, j, k, Face::ZHi, &td))
          fl.z[static_cast<std::size_t>(i + g.nx * (j + g.ny * g.nz))] =
              -kc * (td - tc) / (0.5 * h[2]);
      }

  return fl;
}

std::vector<double> flux_balance_residual(const AssembledSystem& system,
                                          const FaceFluxes& fl,
                                          const std::vector<double>& source) {
  const GridSpec& g = system.grid;
  const double hx = g.hx(), hy = g.hy(), hz = g.hz();
  const double ax = hy * hz, ay = hx * hz, az = hx * hy;
  const double volume = g.cell_volume();
  std::vector<double> res(static_cast<std::size_t>(g.num_cells()));
  for (index_t k = 0; k < g.nz; ++k)
    for (index_t j = 0; j < g.ny; ++j)
      for (index_t i = 0; i < g.nx; ++i) {
        const index_t c = g.cell(i, j, k);
        const double out_x =
            fl.x[static_cast<std::size_t>(i + 1 + (g.nx + 1) * (j + g.ny * k))] -
            fl.x[static_cast<std::size_t>(i + (g.nx + 1) * (j + g.ny * k))];
        const double out_y =
            fl.y[static_cast<std::size_t>(i + g.nx * (j + 1 + (g.ny + 1) * k))] -
            fl.y[static_cast<std::size_t>(i + g.nx * (j + (g.ny + 1) * k))];
        const double out_z =
            fl.z[static_cast<std::size_t>(i + g.nx * (j + g.ny * (k + 1)))] -
            fl.z[static_cast<std::size_t>(i + g.nx * (j + g.ny * k))];
        res[static_cast<std::size_t>(c)] =
            out_x * ax + out_y * ay + out_z * az -
            source[static_cast<std::size_t>(c)] * volume;
      }
  return res;
}

std::vector<double> weighted_mass_diagonal(const GridSpec& grid,
                                           const std::vector<double>& kappa) {
  if (static_cast<index_t>(kappa.size()) != grid.num_cells())
    throw std::invalid_argument("weighted_mass_diagonal: size mismatch");
  const double volume = grid.cell_volume();
  std::vector<double> d(kappa.size());
  for (std::size_t c = 0; c < kappa.size(); ++c) d[c] = kappa[c] * volume;
  return d;
}

}  // namespace topmg
