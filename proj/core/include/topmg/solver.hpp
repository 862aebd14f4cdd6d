#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "topmg/coarse_space.hpp"
#include "topmg/fvm.hpp"
#include "topmg/grid.hpp"
#include "topmg/sparse.hpp"

namespace topmg {

struct SolveReport {
  std::string preconditioner;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // relative residual per iteration
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  /// z = M r. The map must be symmetric positive definite for PCG.
  virtual void apply(std::span<const double> r, std::span<double> z) const = 0;
  virtual index_t size() const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  explicit IdentityPreconditioner(index_t n) : n_(n) {}
  void apply(std::span<const double> r, std::span<double> z) const override;
  index_t size() const override { return n_; }

 private:
  index_t n_;
};

class JacobiPreconditioner final : public Preconditioner {
 public:
  explicit JacobiPreconditioner(const SparseOperator& a);
  void apply(std::span<const double> r, std::span<double> z) const override;
  index_t size() const override {
    return static_cast<index_t>(inv_diag_.size());
  }

 private:
  std::vector<double> inv_diag_;
};

/// Direct symmetric factorization (LDL^T): dense below dimension 4096,
/// sparse above. Throws SolverError with the offending pivot when the matrix
/// is numerically singular.
class DirectSolver {
 public:
  DirectSolver();
  explicit DirectSolver(const SparseOperator& a);
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;
  ~DirectSolver();

  std::vector<double> solve(const std::vector<double>& rhs) const;
  index_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Block-Jacobi smoother: nu sweeps of z <- z + D_B^-1 (r - A z) starting
/// from z = 0, where D_B is the block-diagonal part of A over the given
/// partition and each block is factorized exactly. The blocks are symmetric,
/// so applying the transpose is the same operation.
class BlockJacobiSmoother {
 public:
  BlockJacobiSmoother();
  BlockJacobiSmoother(const SparseOperator& a,
                      std::vector<std::vector<index_t>> blocks, int sweeps);
  BlockJacobiSmoother(BlockJacobiSmoother&&) noexcept;
  BlockJacobiSmoother& operator=(BlockJacobiSmoother&&) noexcept;
  ~BlockJacobiSmoother();

  /// z = smoother(r); `a` is the operator of this level (used for sweeps > 1).
  void apply(const SparseOperator& a, std::span<const double> r,
             std::span<double> z) const;
  std::vector<double> apply(const SparseOperator& a,
                            const std::vector<double>& r) const;

  int sweeps() const;
  index_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The assembled three-grid preconditioner: restrictions R_c and R_cc, the
/// Galerkin operators A_c = R_c A R_c^T and A_cc = R_cc A_c R_cc^T, block-
/// Jacobi smoothers on the fine and coarse levels, and a direct factorization
/// of A_cc. apply() runs one symmetric V-cycle:
///   presmooth, restrict, presmooth, restrict, solve A_cc exactly,
///   prolongate, postsmooth, prolongate, postsmooth.
class MultiscaleHierarchy final : public Preconditioner {
 public:
  MultiscaleHierarchy(SparseOperator a, SparseOperator rc, SparseOperator rcc,
                      std::vector<std::vector<index_t>> fine_blocks,
                      std::vector<std::vector<index_t>> coarse_blocks,
                      int sweeps);

  void apply(std::span<const double> r, std::span<double> z) const override;
  index_t size() const override { return a_.rows(); }

  const SparseOperator& fine_operator() const { return a_; }
  const SparseOperator& coarse_operator() const { return ac_; }
  const SparseOperator& coarse_coarse_operator() const { return acc_; }
  const SparseOperator& restriction_c() const { return rc_; }
  const SparseOperator& restriction_cc() const { return rcc_; }

 private:
  SparseOperator a_, rc_, rcc_, ac_, acc_;
  BlockJacobiSmoother fine_smoother_, coarse_smoother_;
  DirectSolver acc_solver_;
  int sweeps_;
};

/// Computes the Galerkin products, factorizes A_cc, and prepares the
/// smoothers. The block partitions default to a single block per level when
/// omitted (then the smoother is an exact solve of that level).
MultiscaleHierarchy build_hierarchy_operators(
    const SparseOperator& a, SparseOperator rc, SparseOperator rcc,
    std::vector<std::vector<index_t>> fine_blocks,
    std::vector<std::vector<index_t>> coarse_blocks, int sweeps = 1);
MultiscaleHierarchy build_hierarchy_operators(const SparseOperator& a,
                                              SparseOperator rc,
                                              SparseOperator rcc,
                                              int sweeps = 1);

struct MmgOptions {
  index_t num_local_basis = 4;  // L_c eigenvectors per coarse element
  index_t num_cc_basis = 8;     // L_cc eigenvectors per coarse-coarse element
  int smoother_sweeps = 1;      // pre/post sweeps at each level
  SpectralOptions spectral;
};

/// Full multiscale setup from an assembled system: spectral coarse spaces,
/// Galerkin operators, smoothers with one block per coarse-coarse element.
MultiscaleHierarchy build_mmg(const AssembledSystem& system,
                              const HierarchicalGrid& hgrid,
                              const MmgOptions& opts = {});

/// Same smoothing and fine-to-coarse structure but with the coarse-coarse
/// level disabled (R_cc = I, so the coarse correction is an exact A_c solve).
MultiscaleHierarchy build_two_grid(const AssembledSystem& system,
                                   const HierarchicalGrid& hgrid,
                                   const MmgOptions& opts = {});

enum class PrecondKind { None, Jacobi, BlockJacobi, TwoGrid, Mmg };

PrecondKind parse_precond_kind(const std::string& name);
std::string to_string(PrecondKind kind);

std::unique_ptr<Preconditioner> make_preconditioner(
    PrecondKind kind, const AssembledSystem& system,
    const HierarchicalGrid& hgrid, const MmgOptions& opts = {});

struct PcgOptions {
  double rtol = 1e-6;
  int max_iterations = 10000;
};

struct PcgResult {
  std::vector<double> x;
  SolveReport report;
};

/// Preconditioned conjugate gradients on an SPD operator. Stops when
/// ||b - A x||_2 / ||b||_2 <= rtol (residual from the recurrence) or at
/// max_iterations, which is reported as converged = false rather than an
/// error. Detected indefiniteness (p^T A p <= 0) throws SolverError.
PcgResult pcg(const SparseOperator& a, const std::vector<double>& b,
              const Preconditioner& m, const PcgOptions& opts = {},
              const std::vector<double>& x0 = {});

}  // namespace topmg
