#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace topmg {

using index_t = std::int64_t;

/// Raised when a run configuration is inconsistent (bad dimensions,
/// non-divisible partitions, empty Dirichlet boundary, ...). Distinct from
/// solver failures, which are reported through SolveReport or SolverError.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Structured fine mesh: nx*ny*nz cells over an lx*ly*lz box.
/// Cells are indexed (i,j,k) with 0 <= i < nx etc.; the linear ordering is
/// x-fastest lexicographic: cell(i,j,k) = i + nx*(j + ny*k). All operators in
/// this project use this ordering.
struct GridSpec {
  index_t nx = 1, ny = 1, nz = 1;
  double lx = 1.0, ly = 1.0, lz = 1.0;

  GridSpec() = default;
  GridSpec(index_t nx_, index_t ny_, index_t nz_,
           double lx_ = 1.0, double ly_ = 1.0, double lz_ = 1.0);

  index_t num_cells() const { return nx * ny * nz; }
  double hx() const { return lx / static_cast<double>(nx); }
  double hy() const { return ly / static_cast<double>(ny); }
  double hz() const { return lz / static_cast<double>(nz); }
  double cell_volume() const { return hx() * hy() * hz(); }

  index_t cell(index_t i, index_t j, index_t k) const {
    return i + nx * (j + ny * k);
  }
  std::array<index_t, 3> coords(index_t cell_id) const {
    return {cell_id % nx, (cell_id / nx) % ny, cell_id / (nx * ny)};
  }
  bool valid(index_t i, index_t j, index_t k) const {
    return i >= 0 && i < nx && j >= 0 && j < ny && k >= 0 && k < nz;
  }

  bool operator==(const GridSpec&) const = default;
};

enum class Face : int { XLo = 0, XHi, YLo, YHi, ZLo, ZHi };

/// Axis-aligned rectangle on one of the six domain faces held at a fixed
/// temperature. In-plane coordinates are the two axes spanning the face in
/// (x,y,z) order: (y,z) for X faces, (x,z) for Y faces, (x,y) for Z faces.
struct DirichletPatch {
  Face face = Face::ZLo;
  double u0 = 0.0, v0 = 0.0;
  double u1 = 0.0, v1 = 0.0;
  double value = 0.0;
};

/// Dirichlet patches on the boundary; everything not covered by a patch is a
/// zero-flux Neumann boundary.
struct BoundarySpec {
  std::vector<DirichletPatch> patches;

  /// True if the boundary face of cell (i,j,k) on side `face` lies on some
  /// patch (face-center containment); returns the patch value through `value`.
  bool dirichlet_value(const GridSpec& grid, index_t i, index_t j, index_t k,
                       Face face, double* value) const;

  /// Throws ConfigError on out-of-domain or overlapping patches.
  void validate(const GridSpec& grid) const;

  /// Number of boundary cell faces covered by Dirichlet patches.
  index_t count_dirichlet_faces(const GridSpec& grid) const;

  static BoundarySpec bottom_center_patch(double lx, double ly, double side,
                                          double value);
};

/// Three nested structured partitions of the fine grid: fine cells, coarse
/// elements, and coarse-coarse elements. Each coarse-coarse element contains
/// sd^3 coarse elements; each coarse element is an identical box of fine
/// cells. Immutable after construction.
struct HierarchicalGrid {
  GridSpec spec;
  std::array<index_t, 3> ncc{};  // coarse-coarse elements per axis
  index_t sd = 1;                // coarse subdivisions per axis per cc element

  std::array<index_t, 3> nc{};          // coarse elements per axis
  std::array<index_t, 3> cells_per_c{}; // fine cells per axis per coarse element

  index_t num_coarse() const { return nc[0] * nc[1] * nc[2]; }
  index_t num_coarse_coarse() const { return ncc[0] * ncc[1] * ncc[2]; }
  index_t cells_in_coarse() const {
    return cells_per_c[0] * cells_per_c[1] * cells_per_c[2];
  }

  index_t coarse_index(index_t ci, index_t cj, index_t ck) const {
    return ci + nc[0] * (cj + nc[1] * ck);
  }
  index_t cc_index(index_t ci, index_t cj, index_t ck) const {
    return ci + ncc[0] * (cj + ncc[1] * ck);
  }

  index_t coarse_of_cell(index_t cell_id) const;
  index_t cc_of_coarse(index_t coarse_id) const;

  /// Fine-cell box origin (in cell coordinates) of a coarse element.
  std::array<index_t, 3> coarse_origin(index_t coarse_id) const;
  /// Fine-cell box origin and extent of a coarse-coarse element.
  std::array<index_t, 3> cc_origin(index_t cc_id) const;
  std::array<index_t, 3> cells_per_cc() const;

  /// Fine cells of one coarse element, x-fastest lexicographic order.
  std::vector<index_t> cells_of_coarse(index_t coarse_id) const;
  /// Fine cells of one coarse-coarse element, x-fastest lexicographic order.
  std::vector<index_t> cells_of_coarse_coarse(index_t cc_id) const;
  /// Coarse children of one coarse-coarse element, coarse-grid order.
  std::vector<index_t> coarse_children(index_t cc_id) const;
};

/// Validates divisibility (nx % (ncc_x*sd) == 0, likewise y/z) and builds the
/// index maps. Throws ConfigError when the partition does not fit.
HierarchicalGrid build_hierarchy(const GridSpec& spec,
                                 std::array<index_t, 3> ncc, index_t sd);

/// Piecewise-constant prolongation of a per-cell field from a coarser grid to
/// a finer one refining it by an integer factor per axis. Preserves the mean
/// exactly. Throws ConfigError for non-integer refinement factors.
std::vector<double> interpolate_design(const std::vector<double>& values_lo,
                                       const GridSpec& grid_lo,
                                       const GridSpec& grid_hi);

}  // namespace topmg
