#pragma once

#include <array>
#include <string>
#include <vector>

#include "topmg/fvm.hpp"
#include "topmg/grid.hpp"
#include "topmg/sparse.hpp"

namespace topmg {

/// TPFA stiffness of an axis-aligned sub-box of the grid using only faces
/// strictly interior to the box (zero-flux closure on the box boundary), with
/// the same transmissibility scaling kappa_F * area / h as the global
/// operator. Rows/columns follow the box-local x-fastest cell order, i.e. the
/// order of HierarchicalGrid::cells_of_coarse.
SparseOperator box_interior_stiffness(const GridSpec& spec,
                                      const std::vector<double>& kappa,
                                      std::array<index_t, 3> origin,
                                      std::array<index_t, 3> extent);

/// The lowest eigenpairs of the local generalized problem
///   S_loc Phi = lambda M_loc Phi
/// on one coarse element, where S_loc is the interior-face stiffness and
/// M_loc the kappa-weighted diagonal mass. Eigenvalues ascend; eigenvectors
/// (columns of `vectors`, length cells.size() each) satisfy
/// Phi_i^T M_loc Phi_j = delta_ij. Constants are in the kernel of S_loc, so
/// the smallest eigenvalue of every element is zero up to roundoff.
struct LocalSpectralBasis {
  index_t element_id = 0;
  std::vector<index_t> cells;       // global fine-cell ids, box order
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> vectors;      // column-major, cells.size() x count
};

struct SpectralOptions {
  /// Problems up to this dimension use a dense symmetric eigensolver; larger
  /// ones fall back to shift-inverted-free Lanczos with full
  /// reorthogonalization on the mass-normalized operator.
  index_t dense_threshold = 4096;
};

LocalSpectralBasis local_spectral_basis(const HierarchicalGrid& grid,
                                        const std::vector<double>& kappa,
                                        index_t coarse_id, index_t count,
                                        const SpectralOptions& opts = {});

/// Stacks the per-element eigenvectors into the restriction R_c (n_c x M).
/// Rows are grouped by coarse element in grid order and eigenvalue-ascending
/// within an element; every element must contribute the same count.
SparseOperator assemble_restriction(const std::vector<LocalSpectralBasis>& bases,
                                    index_t num_cells);

/// Eigenpairs of the coarse-coarse spectral problem on one coarse-coarse
/// element: the interior-face stiffness of the element projected onto the
/// span of its children's local bases. Because those bases are
/// mass-orthonormal with disjoint supports, the projected mass is the
/// identity and the problem is a standard symmetric one. `vectors` holds
/// coefficient columns over the element's coarse rows (listed in
/// `coarse_rows`, which indexes rows of R_c).
struct CoarseCoarseBasis {
  index_t element_id = 0;
  std::vector<index_t> coarse_rows;
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> vectors;      // column-major, coarse_rows.size() x count
};

CoarseCoarseBasis coarse_coarse_basis(const HierarchicalGrid& grid,
                                      const std::vector<double>& kappa,
                                      const SparseOperator& restriction_c,
                                      index_t cc_id, index_t count,
                                      const SpectralOptions& opts = {});

/// Stacks coarse-coarse coefficient rows into R_cc (n_cc x n_c), grouped by
/// coarse-coarse element in grid order, eigenvalue-ascending within.
SparseOperator assemble_cc_restriction(
    const std::vector<CoarseCoarseBasis>& bases, index_t n_coarse);

/// Both restriction operators for a hierarchy: solves every local problem
/// (element tasks run concurrently and independently) and assembles
/// R_c and R_cc with uniform basis counts per element.
struct CoarseSpaces {
  SparseOperator restriction_c;
  SparseOperator restriction_cc;
  std::vector<LocalSpectralBasis> local_bases;
  std::vector<CoarseCoarseBasis> cc_bases;
};

CoarseSpaces build_coarse_spaces(const HierarchicalGrid& grid,
                                 const std::vector<double>& kappa,
                                 index_t num_local_basis, index_t num_cc_basis,
                                 const SpectralOptions& opts = {});

/// Diagnostic dump: one line per (element, index, eigenvalue).
void write_spectra_csv(const std::vector<LocalSpectralBasis>& bases,
                       const std::string& path);

}  // namespace topmg
