#include "topmg/coarse_space.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "topmg/parallel.hpp"
#include "topmg/rng.hpp"

namespace topmg {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseOperator& a) {
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(a.rows()),
                                static_cast<Eigen::Index>(a.cols()));
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(a.nnz()));
  for (index_t r = 0; r < a.rows(); ++r)
    for (index_t p = a.row_offsets()[static_cast<std::size_t>(r)];
         p < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p)
      trips.emplace_back(static_cast<int>(r),
                         static_cast<int>(a.col_indices()[static_cast<std::size_t>(p)]),
                         a.values()[static_cast<std::size_t>(p)]);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

struct EigResult {
  std::vector<double> values;   // ascending, size count
  std::vector<double> vectors;  // column-major n x count, orthonormal
};

// Smallest eigenpairs of the symmetric matrix B given as CSR, dense path.
EigResult dense_smallest(const SparseOperator& b, index_t count) {
  const index_t n = b.rows();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (index_t r = 0; r < n; ++r)
    for (index_t p = b.row_offsets()[static_cast<std::size_t>(r)];
         p < b.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p)
      dense(r, b.col_indices()[static_cast<std::size_t>(p)]) =
          b.values()[static_cast<std::size_t>(p)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success)
    throw SolverError("local eigensolver failed to converge");
  EigResult out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + count);
  out.vectors.resize(static_cast<std::size_t>(n * count));
  for (index_t c = 0; c < count; ++c)
    for (index_t i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(c * n + i)] = es.eigenvectors()(i, c);
  return out;
}

// Smallest eigenpairs via Lanczos with full reorthogonalization applied to
// sigma*I - B, whose largest eigenvalues map to the smallest of B. sigma is a
// Gershgorin upper bound, so the shifted operator is positive semidefinite.
EigResult lanczos_smallest(const SparseOperator& b, index_t count) {
  const index_t n = b.rows();
  double sigma = 0.0;
  for (index_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (index_t p = b.row_offsets()[static_cast<std::size_t>(r)];
         p < b.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p) {
      const double v = b.values()[static_cast<std::size_t>(p)];
      row += (b.col_indices()[static_cast<std::size_t>(p)] == r) ? v : std::abs(v);
    }
    sigma = std::max(sigma, row);
  }
  sigma = std::max(sigma, 1.0);

  auto apply_shifted = [&](const std::vector<double>& x) {
    std::vector<double> y = b.apply(x);
    for (index_t i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] =
          sigma * x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
    return y;
  };

  Lcg64 rng(0x5eedbeefULL);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;  // tridiagonal coefficients

  auto fresh_vector = [&]() {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& e : v) e = rng.next_uniform() - 0.5;
    for (const auto& q : basis) {
      double dot = 0.0;
      for (index_t i = 0; i < n; ++i)
        dot += q[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      for (index_t i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] -= dot * q[static_cast<std::size_t>(i)];
    }
    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    for (double& e : v) e /= norm;
    return v;
  };

  basis.push_back(fresh_vector());
  const index_t max_steps = n;
  const double conv_tol = 1e-10 * sigma;

  EigResult out;
  for (index_t step = 0; step < max_steps; ++step) {
    std::vector<double> w = apply_shifted(basis.back());
    double a = 0.0;
    for (index_t i = 0; i < n; ++i)
      a += basis.back()[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    alpha.push_back(a);
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        double dot = 0.0;
        for (index_t i = 0; i < n; ++i)
          dot += q[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
        for (index_t i = 0; i < n; ++i)
          w[static_cast<std::size_t>(i)] -= dot * q[static_cast<std::size_t>(i)];
      }
    double nb = 0.0;
    for (double e : w) nb += e * e;
    nb = std::sqrt(nb);

    const index_t m = static_cast<index_t>(alpha.size());
    const bool enough_steps = m >= count;
    if (enough_steps) {
      // Ritz values/vectors of the current tridiagonal
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (index_t i = 0; i < m; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
          t(i, i + 1) = beta[static_cast<std::size_t>(i)];
          t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      // largest `count` of the shifted operator
      bool converged = true;
      for (index_t j = 0; j < count; ++j) {
        const index_t col = m - 1 - j;
        const double resid = nb * std::abs(es.eigenvectors()(m - 1, col));
        if (resid > conv_tol) converged = false;
      }
      if (converged || m == n || nb < 1e-14 * sigma) {
        out.values.resize(static_cast<std::size_t>(count));
        out.vectors.assign(static_cast<std::size_t>(n * count), 0.0);
        for (index_t j = 0; j < count; ++j) {
          const index_t col = m - 1 - j;
          out.values[static_cast<std::size_t>(count - 1 - j)] =
              sigma - es.eigenvalues()(col);
          for (index_t s = 0; s < m; ++s) {
            const double coef = es.eigenvectors()(s, col);
            const auto& q = basis[static_cast<std::size_t>(s)];
            double* dst = out.vectors.data() +
                          static_cast<std::size_t>((count - 1 - j) * n);
            for (index_t i = 0; i < n; ++i)
              dst[static_cast<std::size_t>(i)] +=
                  coef * q[static_cast<std::size_t>(i)];
          }
        }
        // tighten orthonormality of the returned block
        for (index_t j = 0; j < count; ++j) {
          double* vj = out.vectors.data() + static_cast<std::size_t>(j * n);
          for (index_t k2 = 0; k2 < j; ++k2) {
            const double* vk =
                out.vectors.data() + static_cast<std::size_t>(k2 * n);
            double dot = 0.0;
            for (index_t i = 0; i < n; ++i) dot += vk[i] * vj[i];
            for (index_t i = 0; i < n; ++i) vj[i] -= dot * vk[i];
          }
          double norm = 0.0;
          for (index_t i = 0; i < n; ++i) norm += vj[i] * vj[i];
          norm = std::sqrt(norm);
          if (norm < 1e-14)
            throw SolverError("Lanczos produced a degenerate Ritz block");
          for (index_t i = 0; i < n; ++i) vj[i] /= norm;
        }
        return out;
      }
    }

    if (m == n) break;
    if (nb < 1e-14 * sigma) {
      // invariant subspace found; restart with a deflated random vector
      beta.push_back(0.0);
      basis.push_back(fresh_vector());
    } else {
      beta.push_back(nb);
      for (double& e : w) e /= nb;
      basis.push_back(std::move(w));
    }
  }
  throw SolverError("Lanczos eigensolver failed to converge");
}

// Smallest eigenpairs of the generalized problem S v = lambda M v with
// diagonal SPD M, via the congruence B = M^-1/2 S M^-1/2. Returned vectors
// are M-orthonormal.
EigResult generalized_smallest(const SparseOperator& s,
                               const std::vector<double>& mass, index_t count,
                               const SpectralOptions& opts) {
  const index_t n = s.rows();
  if (count > n)
    throw std::invalid_argument("eigensolver: requested more pairs than rows");
  std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) {
    const double m = mass[static_cast<std::size_t>(i)];
    if (!(m > 0.0))
      throw SolverError("eigensolver: nonpositive mass entry (kappa <= 0?)");
    inv_sqrt[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(m);
  }
  std::vector<index_t> offs = s.row_offsets();
  std::vector<index_t> cols = s.col_indices();
  std::vector<double> vals = s.values();
  for (index_t r = 0; r < n; ++r)
    for (index_t p = offs[static_cast<std::size_t>(r)];
         p < offs[static_cast<std::size_t>(r) + 1]; ++p)
      vals[static_cast<std::size_t>(p)] *=
          inv_sqrt[static_cast<std::size_t>(r)] *
          inv_sqrt[static_cast<std::size_t>(cols[static_cast<std::size_t>(p)])];
  SparseOperator b(n, n, std::move(offs), std::move(cols), std::move(vals), true);

  EigResult res = (n <= opts.dense_threshold) ? dense_smallest(b, count)
                                              : lanczos_smallest(b, count);
  for (index_t c = 0; c < count; ++c)
    for (index_t i = 0; i < n; ++i)
      res.vectors[static_cast<std::size_t>(c * n + i)] *=
          inv_sqrt[static_cast<std::size_t>(i)];
  return res;
}

}  // namespace

SparseOperator box_interior_stiffness(const GridSpec& spec,
                                      const std::vector<double>& kappa,
                                      std::array<index_t, 3> origin,
                                      std::array<index_t, 3> extent) {
  const double hx = spec.hx(), hy = spec.hy(), hz = spec.hz();
  const double coupling[3] = {hy * hz / hx, hx * hz / hy, hx * hy / hz};
  const index_t n = extent[0] * extent[1] * extent[2];
  auto local = [&](index_t i, index_t j, index_t k) {
    return i + extent[0] * (j + extent[1] * k);
  };
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(7 * n));
  for (index_t k = 0; k < extent[2]; ++k)
    for (index_t j = 0; j < extent[1]; ++j)
      for (index_t i = 0; i < extent[0]; ++i) {
        const index_t g =
            spec.cell(origin[0] + i, origin[1] + j, origin[2] + k);
        const index_t l = local(i, j, k);
        const index_t nb_local[3] = {local(i + 1, j, k), local(i, j + 1, k),
                                     local(i, j, k + 1)};
        const index_t nb_global[3] = {
            spec.cell(origin[0] + i + 1, origin[1] + j, origin[2] + k),
            spec.cell(origin[0] + i, origin[1] + j + 1, origin[2] + k),
            spec.cell(origin[0] + i, origin[1] + j, origin[2] + k + 1)};
        const bool has[3] = {i + 1 < extent[0], j + 1 < extent[1],
                             k + 1 < extent[2]};
        for (int a = 0; a < 3; ++a) {
          if (!has[a]) continue;
          const double t =
              face_transmissibility(kappa[static_cast<std::size_t>(g)],
                                    kappa[static_cast<std::size_t>(nb_global[a])]) *
              coupling[a];
          trips.push_back({l, l, t});
          trips.push_back({nb_local[a], nb_local[a], t});
          trips.push_back({l, nb_local[a], -t});
          trips.push_back({nb_local[a], l, -t});
        }
      }
  return SparseOperator::from_triplets(n, n, std::move(trips), true);
}

LocalSpectralBasis local_spectral_basis(const HierarchicalGrid& grid,
                                        const std::vector<double>& kappa,
                                        index_t coarse_id, index_t count,
                                        const SpectralOptions& opts) {
  LocalSpectralBasis basis;
  basis.element_id = coarse_id;
  basis.cells = grid.cells_of_coarse(coarse_id);
  const index_t n = static_cast<index_t>(basis.cells.size());
  if (count > n)
    throw std::invalid_argument(
        "local_spectral_basis: more eigenvectors than cells requested");

  SparseOperator s = box_interior_stiffness(
      grid.spec, kappa, grid.coarse_origin(coarse_id), grid.cells_per_c);
  std::vector<double> mass(static_cast<std::size_t>(n));
  const double volume = grid.spec.cell_volume();
  for (index_t i = 0; i < n; ++i)
    mass[static_cast<std::size_t>(i)] =
        kappa[static_cast<std::size_t>(basis.cells[static_cast<std::size_t>(i)])] *
        volume;

  EigResult res = generalized_smallest(s, mass, count, opts);
  basis.eigenvalues = std::move(res.values);
  basis.vectors = std::move(res.vectors);
  return basis;
}

SparseOperator assemble_restriction(const std::vector<LocalSpectralBasis>& bases,
                                    index_t num_cells) {
  if (bases.empty())
    throw std::invalid_argument("assemble_restriction: no bases");
  const index_t per = static_cast<index_t>(bases.front().eigenvalues.size());
  index_t covered = 0;
  for (const auto& b : bases) {
    if (static_cast<index_t>(b.eigenvalues.size()) != per)
      throw std::invalid_argument(
          "assemble_restriction: uneven basis counts across elements");
    covered += static_cast<index_t>(b.cells.size());
  }
  if (covered != num_cells)
    throw std::invalid_argument(
        "assemble_restriction: elements do not cover the grid");

  const index_t n_rows = per * static_cast<index_t>(bases.size());
  std::vector<index_t> offsets;
  offsets.reserve(static_cast<std::size_t>(n_rows) + 1);
  offsets.push_back(0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  for (const auto& b : bases) {
    const index_t n = static_cast<index_t>(b.cells.size());
    for (index_t j = 0; j < per; ++j) {
      // cells_of_coarse emits ascending global ids, so rows are sorted
      for (index_t i = 0; i < n; ++i) {
        cols.push_back(b.cells[static_cast<std::size_t>(i)]);
        vals.push_back(b.vectors[static_cast<std::size_t>(j * n + i)]);
      }
      offsets.push_back(static_cast<index_t>(cols.size()));
    }
  }
  return SparseOperator(n_rows, num_cells, std::move(offsets), std::move(cols),
                        std::move(vals), false);
}

CoarseCoarseBasis coarse_coarse_basis(const HierarchicalGrid& grid,
                                      const std::vector<double>& kappa,
                                      const SparseOperator& restriction_c,
                                      index_t cc_id, index_t count,
                                      const SpectralOptions& opts) {
  const index_t m_c = grid.num_coarse();
  if (restriction_c.rows() % m_c != 0)
    throw std::invalid_argument(
        "coarse_coarse_basis: restriction rows not uniform per element");
  const index_t per = restriction_c.rows() / m_c;

  CoarseCoarseBasis basis;
  basis.element_id = cc_id;
  const std::vector<index_t> children = grid.coarse_children(cc_id);
  for (index_t child : children)
    for (index_t j = 0; j < per; ++j)
      basis.coarse_rows.push_back(child * per + j);
  const index_t q = static_cast<index_t>(basis.coarse_rows.size());
  if (count > q)
    throw std::invalid_argument(
        "coarse_coarse_basis: more eigenvectors than coarse basis functions");

  const auto origin = grid.cc_origin(cc_id);
  const auto extent = grid.cells_per_cc();
  SparseOperator s = box_interior_stiffness(grid.spec, kappa, origin, extent);

  // box-local index of a global cell
  auto local_of = [&](index_t g) {
    const auto c = grid.spec.coords(g);
    return (c[0] - origin[0]) +
           extent[0] * ((c[1] - origin[1]) + extent[1] * (c[2] - origin[2]));
  };

  const index_t n_loc = extent[0] * extent[1] * extent[2];
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(q, n_loc);
  for (index_t r = 0; r < q; ++r) {
    const index_t row = basis.coarse_rows[static_cast<std::size_t>(r)];
    for (index_t ptr = restriction_c.row_offsets()[static_cast<std::size_t>(row)];
         ptr < restriction_c.row_offsets()[static_cast<std::size_t>(row) + 1];
         ++ptr) {
      const index_t g =
          restriction_c.col_indices()[static_cast<std::size_t>(ptr)];
      p(r, local_of(g)) = restriction_c.values()[static_cast<std::size_t>(ptr)];
    }
  }

  // projected stiffness; the projected mass is the identity because the
  // child bases are mass-orthonormal with disjoint supports
  Eigen::SparseMatrix<double> s_eig = to_eigen(s);
  Eigen::MatrixXd projected = p * (s_eig * p.transpose());
  projected = 0.5 * (projected + projected.transpose().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected);
  if (es.info() != Eigen::Success)
    throw SolverError("coarse-coarse eigensolver failed to converge");
  (void)opts;
  basis.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + count);
  basis.vectors.resize(static_cast<std::size_t>(q * count));
  for (index_t c = 0; c < count; ++c)
    for (index_t i = 0; i < q; ++i)
      basis.vectors[static_cast<std::size_t>(c * q + i)] = es.eigenvectors()(i, c);
  return basis;
}

SparseOperator assemble_cc_restriction(
    const std::vector<CoarseCoarseBasis>& bases, index_t n_coarse) {
  if (bases.empty())
    throw std::invalid_argument("assemble_cc_restriction: no bases");
  const index_t per = static_cast<index_t>(bases.front().eigenvalues.size());
  std::vector<Triplet> trips;
  index_t row = 0;
  for (const auto& b : bases) {
    if (static_cast<index_t>(b.eigenvalues.size()) != per)
      throw std::invalid_argument(
          "assemble_cc_restriction: uneven basis counts across elements");
    const index_t q = static_cast<index_t>(b.coarse_rows.size());
    for (index_t j = 0; j < per; ++j, ++row)
      for (index_t i = 0; i < q; ++i)
        trips.push_back({row, b.coarse_rows[static_cast<std::size_t>(i)],
                         b.vectors[static_cast<std::size_t>(j * q + i)]});
  }
  return SparseOperator::from_triplets(row, n_coarse, std::move(trips), false);
}

CoarseSpaces build_coarse_spaces(const HierarchicalGrid& grid,
                                 const std::vector<double>& kappa,
                                 index_t num_local_basis, index_t num_cc_basis,
                                 const SpectralOptions& opts) {
  CoarseSpaces spaces;
  const index_t m_c = grid.num_coarse();
  spaces.local_bases.resize(static_cast<std::size_t>(m_c));
  parallel_for(
      0, m_c,
      [&](index_t e) {
        spaces.local_bases[static_cast<std::size_t>(e)] =
            local_spectral_basis(grid, kappa, e, num_local_basis, opts);
      },
      /*grain=*/1);
  spaces.restriction_c =
      assemble_restriction(spaces.local_bases, grid.spec.num_cells());

  const index_t m_cc = grid.num_coarse_coarse();
  spaces.cc_bases.resize(static_cast<std::size_t>(m_cc));
  parallel_for(
      0, m_cc,
      [&](index_t e) {
        spaces.cc_bases[static_cast<std::size_t>(e)] = coarse_coarse_basis(
            grid, kappa, spaces.restriction_c, e, num_cc_basis, opts);
      },
      /*grain=*/1);
  spaces.restriction_cc =
      assemble_cc_restriction(spaces.cc_bases, spaces.restriction_c.rows());
  return spaces;
}

void write_spectra_csv(const std::vector<LocalSpectralBasis>& bases,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "element,index,eigenvalue\n";
  char buf[64];
  for (const auto& b : bases)
    for (std::size_t j = 0; j < b.eigenvalues.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", b.eigenvalues[j]);
      out << b.element_id << "," << j << "," << buf << "\n";
    }
}

}  // namespace topmg
