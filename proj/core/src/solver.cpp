#include "topmg/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <chrono>
#include <cmath>
#include <sstream>

#include "topmg/parallel.hpp"

namespace topmg {

void IdentityPreconditioner::apply(std::span<const double> r,
                                   std::span<double> z) const {
  if (r.size() != z.size() || static_cast<index_t>(r.size()) != n_)
    throw std::invalid_argument("IdentityPreconditioner: size mismatch");
  std::copy(r.begin(), r.end(), z.begin());
}

JacobiPreconditioner::JacobiPreconditioner(const SparseOperator& a)
    : inv_diag_(static_cast<std::size_t>(a.rows())) {
  const std::vector<double> d = a.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw SolverError("JacobiPreconditioner: nonpositive diagonal entry");
    inv_diag_[i] = 1.0 / d[i];
  }
}

void JacobiPreconditioner::apply(std::span<const double> r,
                                 std::span<double> z) const {
  if (r.size() != inv_diag_.size() || z.size() != inv_diag_.size())
    throw std::invalid_argument("JacobiPreconditioner: size mismatch");
  for (std::size_t i = 0; i < inv_diag_.size(); ++i) z[i] = r[i] * inv_diag_[i];
}

namespace {

constexpr index_t kDenseDirectThreshold = 4096;

Eigen::SparseMatrix<double> csr_to_eigen(const SparseOperator& a) {
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(a.rows()),
                                static_cast<Eigen::Index>(a.cols()));
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(a.nnz()));
  for (index_t r = 0; r < a.rows(); ++r)
    for (index_t p = a.row_offsets()[static_cast<std::size_t>(r)];
         p < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p)
      trips.emplace_back(
          static_cast<int>(r),
          static_cast<int>(a.col_indices()[static_cast<std::size_t>(p)]),
          a.values()[static_cast<std::size_t>(p)]);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

struct DirectSolver::Impl {
  index_t n = 0;
  bool dense = true;
  Eigen::LDLT<Eigen::MatrixXd> dense_ldlt;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> sparse_ldlt;
};

DirectSolver::DirectSolver() : impl_(new Impl) {}

DirectSolver::DirectSolver(const SparseOperator& a) : impl_(new Impl) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("DirectSolver: matrix must be square");
  impl_->n = a.rows();
  impl_->dense = a.rows() < kDenseDirectThreshold;
  if (impl_->dense) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows(), a.rows());
    for (index_t r = 0; r < a.rows(); ++r)
      for (index_t p = a.row_offsets()[static_cast<std::size_t>(r)];
           p < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p)
        m(r, a.col_indices()[static_cast<std::size_t>(p)]) =
            a.values()[static_cast<std::size_t>(p)];
    impl_->dense_ldlt.compute(m);
    const auto& d = impl_->dense_ldlt.vectorD();
    double max_pivot = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
      max_pivot = std::max(max_pivot, std::abs(d(i)));
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (!(d(i) > 1e-14 * max_pivot)) {
        std::ostringstream msg;
        msg << "DirectSolver: matrix numerically singular, pivot " << d(i)
            << " at index " << i;
        throw SolverError(msg.str());
      }
  } else {
    impl_->sparse_ldlt.compute(csr_to_eigen(a));
    if (impl_->sparse_ldlt.info() != Eigen::Success)
      throw SolverError("DirectSolver: sparse LDLT factorization failed");
    const auto& d = impl_->sparse_ldlt.vectorD();
    double max_pivot = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
      max_pivot = std::max(max_pivot, std::abs(d(i)));
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (!(d(i) > 1e-14 * max_pivot)) {
        std::ostringstream msg;
        msg << "DirectSolver: matrix numerically singular, pivot " << d(i)
            << " at index " << i;
        throw SolverError(msg.str());
      }
  }
}

DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;
DirectSolver::~DirectSolver() = default;

index_t DirectSolver::size() const { return impl_->n; }

std::vector<double> DirectSolver::solve(const std::vector<double>& rhs) const {
  if (static_cast<index_t>(rhs.size()) != impl_->n)
    throw std::invalid_argument("DirectSolver::solve: size mismatch");
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(),
                                      static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x =
      impl_->dense ? impl_->dense_ldlt.solve(b).eval()
                   : impl_->sparse_ldlt.solve(b).eval();
  return std::vector<double>(x.data(), x.data() + x.size());
}

struct BlockJacobiSmoother::Impl {
  struct Block {
    std::vector<index_t> ids;
    DirectSolver solver;
  };
  std::vector<Block> blocks;
  int sweeps = 1;
  index_t n = 0;
};

BlockJacobiSmoother::BlockJacobiSmoother() : impl_(new Impl) {}

BlockJacobiSmoother::BlockJacobiSmoother(
    const SparseOperator& a, std::vector<std::vector<index_t>> blocks,
    int sweeps)
    : impl_(new Impl) {
  if (sweeps < 0)
    throw std::invalid_argument("BlockJacobiSmoother: negative sweep count");
  impl_->sweeps = sweeps;
  impl_->n = a.rows();

  std::vector<char> seen(static_cast<std::size_t>(a.rows()), 0);
  index_t covered = 0;
  for (const auto& blk : blocks) {
    for (index_t id : blk) {
      if (id < 0 || id >= a.rows() || seen[static_cast<std::size_t>(id)])
        throw std::invalid_argument(
            "BlockJacobiSmoother: blocks must partition the index set");
      seen[static_cast<std::size_t>(id)] = 1;
      ++covered;
    }
  }
  if (covered != a.rows())
    throw std::invalid_argument(
        "BlockJacobiSmoother: blocks must cover every index");

  impl_->blocks.resize(blocks.size());
  std::vector<index_t> local_of(static_cast<std::size_t>(a.rows()), -1);
  // factorizations are independent, but the shared local_of scatter array
  // forces this loop to stay sequential; block extraction is cheap relative
  // to the factorization itself, so give each block task its own scatter
  std::vector<SparseOperator> sub(blocks.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& ids = blocks[bi];
    for (std::size_t i = 0; i < ids.size(); ++i)
      local_of[static_cast<std::size_t>(ids[i])] = static_cast<index_t>(i);
    std::vector<Triplet> trips;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const index_t r = ids[i];
      for (index_t p = a.row_offsets()[static_cast<std::size_t>(r)];
           p < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p) {
        const index_t c = a.col_indices()[static_cast<std::size_t>(p)];
        const index_t lc = local_of[static_cast<std::size_t>(c)];
        if (lc >= 0)
          trips.push_back({static_cast<index_t>(i), lc,
                           a.values()[static_cast<std::size_t>(p)]});
      }
    }
    sub[bi] = SparseOperator::from_triplets(static_cast<index_t>(ids.size()),
                                            static_cast<index_t>(ids.size()),
                                            std::move(trips), true);
    for (index_t id : ids) local_of[static_cast<std::size_t>(id)] = -1;
  }
  parallel_for(
      0, static_cast<index_t>(blocks.size()),
      [&](index_t bi) {
        auto& blk = impl_->blocks[static_cast<std::size_t>(bi)];
        blk.ids = std::move(blocks[static_cast<std::size_t>(bi)]);
        try {
          blk.solver = DirectSolver(sub[static_cast<std::size_t>(bi)]);
        } catch (const SolverError& e) {
          throw SolverError(std::string("BlockJacobiSmoother: singular block: ") +
                            e.what());
        }
      },
      /*grain=*/1);
}

BlockJacobiSmoother::BlockJacobiSmoother(BlockJacobiSmoother&&) noexcept =
    default;
BlockJacobiSmoother& BlockJacobiSmoother::operator=(
    BlockJacobiSmoother&&) noexcept = default;
BlockJacobiSmoother::~BlockJacobiSmoother() = default;

int BlockJacobiSmoother::sweeps() const { return impl_->sweeps; }
index_t BlockJacobiSmoother::size() const { return impl_->n; }

void BlockJacobiSmoother::apply(const SparseOperator& a,
                                std::span<const double> r,
                                std::span<double> z) const {
  if (static_cast<index_t>(r.size()) != impl_->n ||
      static_cast<index_t>(z.size()) != impl_->n)
    throw std::invalid_argument("BlockJacobiSmoother: size mismatch");
  std::fill(z.begin(), z.end(), 0.0);
  if (impl_->sweeps == 0) return;

  std::vector<double> resid(r.begin(), r.end());
  for (int sweep = 0; sweep < impl_->sweeps; ++sweep) {
    if (sweep > 0) {
      // resid = r - A z
      a.apply(z, resid);
      for (std::size_t i = 0; i < resid.size(); ++i) resid[i] = r[i] - resid[i];
    }
    parallel_for(
        0, static_cast<index_t>(impl_->blocks.size()),
        [&](index_t bi) {
          const auto& blk = impl_->blocks[static_cast<std::size_t>(bi)];
          std::vector<double> local(blk.ids.size());
          for (std::size_t i = 0; i < blk.ids.size(); ++i)
            local[i] = resid[static_cast<std::size_t>(blk.ids[i])];
          const std::vector<double> sol = blk.solver.solve(local);
          for (std::size_t i = 0; i < blk.ids.size(); ++i)
            z[static_cast<std::size_t>(blk.ids[i])] += sol[i];
        },
        /*grain=*/1);
  }
}

std::vector<double> BlockJacobiSmoother::apply(
    const SparseOperator& a, const std::vector<double>& r) const {
  std::vector<double> z(r.size());
  apply(a, std::span<const double>(r), std::span<double>(z));
  return z;
}

MultiscaleHierarchy::MultiscaleHierarchy(
    SparseOperator a, SparseOperator rc, SparseOperator rcc,
    std::vector<std::vector<index_t>> fine_blocks,
    std::vector<std::vector<index_t>> coarse_blocks, int sweeps)
    : a_(std::move(a)), rc_(std::move(rc)), rcc_(std::move(rcc)),
      sweeps_(sweeps) {
  if (rc_.cols() != a_.rows())
    throw std::invalid_argument(
        "MultiscaleHierarchy: R_c columns must match fine dimension");
  if (rcc_.cols() != rc_.rows())
    throw std::invalid_argument(
        "MultiscaleHierarchy: R_cc columns must match coarse dimension");
  ac_ = galerkin_product(rc_, a_);
  acc_ = galerkin_product(rcc_, ac_);
  fine_smoother_ = BlockJacobiSmoother(a_, std::move(fine_blocks), sweeps_);
  coarse_smoother_ = BlockJacobiSmoother(ac_, std::move(coarse_blocks), sweeps_);
  acc_solver_ = DirectSolver(acc_);
}

void MultiscaleHierarchy::apply(std::span<const double> r,
                                std::span<double> z) const {
  const index_t n = a_.rows();
  if (static_cast<index_t>(r.size()) != n ||
      static_cast<index_t>(z.size()) != n)
    throw std::invalid_argument("MultiscaleHierarchy: size mismatch");

  // presmoothing on the fine grid
  std::vector<double> r1(static_cast<std::size_t>(n));
  fine_smoother_.apply(a_, r, std::span<double>(r1));

  // restrict the updated residual onto the coarse space
  std::vector<double> work(static_cast<std::size_t>(n));
  a_.apply(r1, std::span<double>(work));
  for (index_t i = 0; i < n; ++i)
    work[static_cast<std::size_t>(i)] =
        r[static_cast<std::size_t>(i)] - work[static_cast<std::size_t>(i)];
  std::vector<double> rc = rc_.apply(work);

  // presmoothing on the coarse grid
  const index_t n_c = ac_.rows();
  std::vector<double> rc0(static_cast<std::size_t>(n_c));
  coarse_smoother_.apply(ac_, rc, std::span<double>(rc0));

  // restrict onto the coarse-coarse space
  std::vector<double> work_c = ac_.apply(rc0);
  for (index_t i = 0; i < n_c; ++i)
    work_c[static_cast<std::size_t>(i)] =
        rc[static_cast<std::size_t>(i)] - work_c[static_cast<std::size_t>(i)];
  std::vector<double> rcc = rcc_.apply(work_c);

  // coarse-coarse correction by the direct factorization
  std::vector<double> ecc = acc_solver_.solve(rcc);

  // prolongate back into the coarse space
  std::vector<double> rc1 = rcc_.apply_transpose(ecc);
  for (index_t i = 0; i < n_c; ++i)
    rc1[static_cast<std::size_t>(i)] += rc0[static_cast<std::size_t>(i)];

  // postsmoothing on the coarse grid (block-Jacobi is symmetric, so S^-T = S^-1)
  work_c = ac_.apply(rc1);
  for (index_t i = 0; i < n_c; ++i)
    work_c[static_cast<std::size_t>(i)] =
        rc[static_cast<std::size_t>(i)] - work_c[static_cast<std::size_t>(i)];
  std::vector<double> ec(static_cast<std::size_t>(n_c));
  coarse_smoother_.apply(ac_, work_c, std::span<double>(ec));
  for (index_t i = 0; i < n_c; ++i)
    ec[static_cast<std::size_t>(i)] += rc1[static_cast<std::size_t>(i)];

  // prolongate back into the fine space
  std::vector<double> r2 = rc_.apply_transpose(ec);
  for (index_t i = 0; i < n; ++i)
    r2[static_cast<std::size_t>(i)] += r1[static_cast<std::size_t>(i)];

  // postsmoothing on the fine grid
  a_.apply(r2, std::span<double>(work));
  for (index_t i = 0; i < n; ++i)
    work[static_cast<std::size_t>(i)] =
        r[static_cast<std::size_t>(i)] - work[static_cast<std::size_t>(i)];
  fine_smoother_.apply(a_, work, z);
  for (index_t i = 0; i < n; ++i)
    z[static_cast<std::size_t>(i)] += r2[static_cast<std::size_t>(i)];
}

MultiscaleHierarchy build_hierarchy_operators(
    const SparseOperator& a, SparseOperator rc, SparseOperator rcc,
    std::vector<std::vector<index_t>> fine_blocks,
    std::vector<std::vector<index_t>> coarse_blocks, int sweeps) {
  return MultiscaleHierarchy(a, std::move(rc), std::move(rcc),
                             std::move(fine_blocks), std::move(coarse_blocks),
                             sweeps);
}

namespace {

std::vector<std::vector<index_t>> single_block(index_t n) {
  std::vector<index_t> all(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  return {all};
}

std::vector<std::vector<index_t>> fine_blocks_by_cc(
    const HierarchicalGrid& hgrid) {
  std::vector<std::vector<index_t>> blocks;
  blocks.reserve(static_cast<std::size_t>(hgrid.num_coarse_coarse()));
  for (index_t e = 0; e < hgrid.num_coarse_coarse(); ++e)
    blocks.push_back(hgrid.cells_of_coarse_coarse(e));
  return blocks;
}

std::vector<std::vector<index_t>> coarse_blocks_by_cc(
    const HierarchicalGrid& hgrid, index_t rows_per_element) {
  std::vector<std::vector<index_t>> blocks;
  blocks.reserve(static_cast<std::size_t>(hgrid.num_coarse_coarse()));
  for (index_t e = 0; e < hgrid.num_coarse_coarse(); ++e) {
    std::vector<index_t> rows;
    for (index_t child : hgrid.coarse_children(e))
      for (index_t j = 0; j < rows_per_element; ++j)
        rows.push_back(child * rows_per_element + j);
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

}  // namespace

MultiscaleHierarchy build_hierarchy_operators(const SparseOperator& a,
                                              SparseOperator rc,
                                              SparseOperator rcc, int sweeps) {
  auto fine = single_block(a.rows());
  auto coarse = single_block(rc.rows());
  return MultiscaleHierarchy(a, std::move(rc), std::move(rcc), std::move(fine),
                             std::move(coarse), sweeps);
}

MultiscaleHierarchy build_mmg(const AssembledSystem& system,
                              const HierarchicalGrid& hgrid,
                              const MmgOptions& opts) {
  if (!(hgrid.spec == system.grid))
    throw std::invalid_argument("build_mmg: hierarchy grid mismatch");
  CoarseSpaces spaces =
      build_coarse_spaces(hgrid, system.kappa, opts.num_local_basis,
                          opts.num_cc_basis, opts.spectral);
  return MultiscaleHierarchy(
      system.matrix, std::move(spaces.restriction_c),
      std::move(spaces.restriction_cc), fine_blocks_by_cc(hgrid),
      coarse_blocks_by_cc(hgrid, opts.num_local_basis), opts.smoother_sweeps);
}

MultiscaleHierarchy build_two_grid(const AssembledSystem& system,
                                   const HierarchicalGrid& hgrid,
                                   const MmgOptions& opts) {
  if (!(hgrid.spec == system.grid))
    throw std::invalid_argument("build_two_grid: hierarchy grid mismatch");
  const index_t m_c = hgrid.num_coarse();
  std::vector<LocalSpectralBasis> bases(static_cast<std::size_t>(m_c));
  parallel_for(
      0, m_c,
      [&](index_t e) {
        bases[static_cast<std::size_t>(e)] = local_spectral_basis(
            hgrid, system.kappa, e, opts.num_local_basis, opts.spectral);
      },
      /*grain=*/1);
  SparseOperator rc = assemble_restriction(bases, hgrid.spec.num_cells());
  SparseOperator rcc = SparseOperator::identity(rc.rows());
  return MultiscaleHierarchy(
      system.matrix, std::move(rc), std::move(rcc), fine_blocks_by_cc(hgrid),
      coarse_blocks_by_cc(hgrid, opts.num_local_basis), opts.smoother_sweeps);
}

PrecondKind parse_precond_kind(const std::string& name) {
  if (name == "none") return PrecondKind::None;
  if (name == "jacobi") return PrecondKind::Jacobi;
  if (name == "block_jacobi") return PrecondKind::BlockJacobi;
  if (name == "two_grid") return PrecondKind::TwoGrid;
  if (name == "mmg") return PrecondKind::Mmg;
  throw ConfigError("unknown preconditioner kind: " + name);
}

std::string to_string(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::None: return "none";
    case PrecondKind::Jacobi: return "jacobi";
    case PrecondKind::BlockJacobi: return "block_jacobi";
    case PrecondKind::TwoGrid: return "two_grid";
    case PrecondKind::Mmg: return "mmg";
  }
  return "unknown";
}

namespace {

class BlockJacobiPreconditioner final : public Preconditioner {
 public:
  BlockJacobiPreconditioner(const SparseOperator& a,
                            std::vector<std::vector<index_t>> blocks)
      : a_(a), smoother_(a, std::move(blocks), /*sweeps=*/1) {}

  void apply(std::span<const double> r, std::span<double> z) const override {
    smoother_.apply(a_, r, z);
  }
  index_t size() const override { return a_.rows(); }

 private:
  SparseOperator a_;
  BlockJacobiSmoother smoother_;
};

}  // namespace

std::unique_ptr<Preconditioner> make_preconditioner(
    PrecondKind kind, const AssembledSystem& system,
    const HierarchicalGrid& hgrid, const MmgOptions& opts) {
  switch (kind) {
    case PrecondKind::None:
      return std::make_unique<IdentityPreconditioner>(system.matrix.rows());
    case PrecondKind::Jacobi:
      return std::make_unique<JacobiPreconditioner>(system.matrix);
    case PrecondKind::BlockJacobi:
      return std::make_unique<BlockJacobiPreconditioner>(
          system.matrix, fine_blocks_by_cc(hgrid));
    case PrecondKind::TwoGrid:
      return std::make_unique<MultiscaleHierarchy>(
          build_two_grid(system, hgrid, opts));
    case PrecondKind::Mmg:
      return std::make_unique<MultiscaleHierarchy>(
          build_mmg(system, hgrid, opts));
  }
  throw ConfigError("make_preconditioner: unknown kind");
}

PcgResult pcg(const SparseOperator& a, const std::vector<double>& b,
              const Preconditioner& m, const PcgOptions& opts,
              const std::vector<double>& x0) {
  const index_t n = a.rows();
  if (a.cols() != n)
    throw std::invalid_argument("pcg: operator must be square");
  if (static_cast<index_t>(b.size()) != n)
    throw std::invalid_argument("pcg: rhs size mismatch");
  if (!x0.empty() && static_cast<index_t>(x0.size()) != n)
    throw std::invalid_argument("pcg: initial guess size mismatch");

  const auto t_start = std::chrono::steady_clock::now();
  PcgResult result;
  result.report.iterations = 0;

  auto dot = [n](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (index_t i = 0; i < n; ++i)
      s += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    return s;
  };

  double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    result.x.assign(static_cast<std::size_t>(n), 0.0);
    result.report.converged = true;
    result.report.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return result;
  }

  std::vector<double> x =
      x0.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : x0;
  std::vector<double> r(static_cast<std::size_t>(n));
  a.apply(x, std::span<double>(r));
  for (index_t i = 0; i < n; ++i)
    r[static_cast<std::size_t>(i)] =
        b[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)];

  double rnorm = std::sqrt(dot(r, r));
  if (rnorm / bnorm <= opts.rtol) {
    result.x = std::move(x);
    result.report.converged = true;
    result.report.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return result;
  }

  std::vector<double> z(static_cast<std::size_t>(n));
  m.apply(std::span<const double>(r), std::span<double>(z));
  std::vector<double> p = z;
  std::vector<double> q(static_cast<std::size_t>(n));
  double rho = dot(r, z);

  for (int it = 1; it <= opts.max_iterations; ++it) {
    a.apply(p, std::span<double>(q));
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      std::ostringstream msg;
      msg << "pcg: operator or preconditioner not positive definite "
             "(p^T A p = "
          << pq << " at iteration " << it << ")";
      throw SolverError(msg.str());
    }
    const double alpha = rho / pq;
    for (index_t i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(i)] -= alpha * q[static_cast<std::size_t>(i)];
    }
    rnorm = std::sqrt(dot(r, r));
    result.report.residual_history.push_back(rnorm / bnorm);
    result.report.iterations = it;
    if (rnorm / bnorm <= opts.rtol) {
      result.report.converged = true;
      break;
    }
    m.apply(std::span<const double>(r), std::span<double>(z));
    const double rho_next = dot(r, z);
    const double beta = rho_next / rho;
    rho = rho_next;
    for (index_t i = 0; i < n; ++i)
      p[static_cast<std::size_t>(i)] =
          z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
  }

  result.x = std::move(x);
  result.report.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

}  // namespace topmg
