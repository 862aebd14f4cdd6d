#include "topmg/grid.hpp"

#include <algorithm>
#include <sstream>

namespace topmg {

GridSpec::GridSpec(index_t nx_, index_t ny_, index_t nz_,
                   double lx_, double ly_, double lz_)
    : nx(nx_), ny(ny_), nz(nz_), lx(lx_), ly(ly_), lz(lz_) {
  if (nx <= 0 || ny <= 0 || nz <= 0)
    throw ConfigError("GridSpec: cell counts must be positive");
  if (lx <= 0.0 || ly <= 0.0 || lz <= 0.0)
    throw ConfigError("GridSpec: domain extents must be positive");
}

namespace {

// In-plane face-center coordinates (u,v) of the boundary face of cell
// (i,j,k) on side `face`, plus which patches can match.
void face_center(const GridSpec& g, index_t i, index_t j, index_t k, Face face,
                 double* u, double* v) {
  const double cx = (static_cast<double>(i) + 0.5) * g.hx();
  const double cy = (static_cast<double>(j) + 0.5) * g.hy();
  const double cz = (static_cast<double>(k) + 0.5) * g.hz();
  switch (face) {
    case Face::XLo:
    case Face::XHi: *u = cy; *v = cz; break;
    case Face::YLo:
    case Face::YHi: *u = cx; *v = cz; break;
    case Face::ZLo:
    case Face::ZHi: *u = cx; *v = cy; break;
  }
}

bool on_boundary(const GridSpec& g, index_t i, index_t j, index_t k, Face face) {
  switch (face) {
    case Face::XLo: return i == 0;
    case Face::XHi: return i == g.nx - 1;
    case Face::YLo: return j == 0;
    case Face::YHi: return j == g.ny - 1;
    case Face::ZLo: return k == 0;
    case Face::ZHi: return k == g.nz - 1;
  }
  return false;
}

void face_extents(const GridSpec& g, Face face, double* lu, double* lv) {
  switch (face) {
    case Face::XLo:
    case Face::XHi: *lu = g.ly; *lv = g.lz; break;
    case Face::YLo:
    case Face::YHi: *lu = g.lx; *lv = g.lz; break;
    case Face::ZLo:
    case Face::ZHi: *lu = g.lx; *lv = g.ly; break;
  }
}

}  // namespace

bool BoundarySpec::dirichlet_value(const GridSpec& grid, index_t i, index_t j,
                                   index_t k, Face face, double* value) const {
  if (!on_boundary(grid, i, j, k, face)) return false;
  double u = 0.0, v = 0.0;
  face_center(grid, i, j, k, face, &u, &v);
  for (const DirichletPatch& p : patches) {
    if (p.face != face) continue;
    if (u >= p.u0 && u <= p.u1 && v >= p.v0 && v <= p.v1) {
      if (value) *value = p.value;
      return true;
    }
  }
  return false;
}

void BoundarySpec::validate(const GridSpec& grid) const {
  for (std::size_t a = 0; a < patches.size(); ++a) {
    const DirichletPatch& p = patches[a];
    if (p.u1 < p.u0 || p.v1 < p.v0)
      throw ConfigError("BoundarySpec: patch with negative extent");
    double lu = 0.0, lv = 0.0;
    face_extents(grid, p.face, &lu, &lv);
    if (p.u0 < 0.0 || p.v0 < 0.0 || p.u1 > lu || p.v1 > lv)
      throw ConfigError("BoundarySpec: patch outside the domain face");
    for (std::size_t b = a + 1; b < patches.size(); ++b) {
      const DirichletPatch& q = patches[b];
      if (p.face != q.face) continue;
      const bool overlap =
          p.u0 < q.u1 && q.u0 < p.u1 && p.v0 < q.v1 && q.v0 < p.v1;
      if (overlap) throw ConfigError("BoundarySpec: overlapping patches");
    }
  }
}

index_t BoundarySpec::count_dirichlet_faces(const GridSpec& grid) const {
  index_t count = 0;
  double tmp;
  for (index_t k = 0; k < grid.nz; ++k)
    for (index_t j = 0; j < grid.ny; ++j)
      for (index_t i = 0; i < grid.nx; ++i)
        for (Face f : {Face::XLo, Face::XHi, Face::YLo, Face::YHi, Face::ZLo,
                       Face::ZHi})
          if (dirichlet_value(grid, i, j, k, f, &tmp)) ++count;
  return count;
}

BoundarySpec BoundarySpec::bottom_center_patch(double lx, double ly,
                                               double side, double value) {
  BoundarySpec bc;
  DirichletPatch p;
  p.face = Face::ZLo;
  p.u0 = 0.5 * (lx - side);
  p.u1 = 0.5 * (lx + side);
  p.v0 = 0.5 * (ly - side);
  p.v1 = 0.5 * (ly + side);
  p.value = value;
  bc.patches.push_back(p);
  return bc;
}

index_t HierarchicalGrid::coarse_of_cell(index_t cell_id) const {
  const auto c = spec.coords(cell_id);
  return coarse_index(c[0] / cells_per_c[0], c[1] / cells_per_c[1],
                      c[2] / cells_per_c[2]);
}

index_t HierarchicalGrid::cc_of_coarse(index_t coarse_id) const {
  const index_t ci = coarse_id % nc[0];
  const index_t cj = (coarse_id / nc[0]) % nc[1];
  const index_t ck = coarse_id / (nc[0] * nc[1]);
  return cc_index(ci / sd, cj / sd, ck / sd);
}

std::array<index_t, 3> HierarchicalGrid::coarse_origin(index_t coarse_id) const {
  const index_t ci = coarse_id % nc[0];
  const index_t cj = (coarse_id / nc[0]) % nc[1];
  const index_t ck = coarse_id / (nc[0] * nc[1]);
  return {ci * cells_per_c[0], cj * cells_per_c[1], ck * cells_per_c[2]};
}

std::array<index_t, 3> HierarchicalGrid::cells_per_cc() const {
  return {cells_per_c[0] * sd, cells_per_c[1] * sd, cells_per_c[2] * sd};
}

std::array<index_t, 3> HierarchicalGrid::cc_origin(index_t cc_id) const {
  const index_t ci = cc_id % ncc[0];
  const index_t cj = (cc_id / ncc[0]) % ncc[1];
  const index_t ck = cc_id / (ncc[0] * ncc[1]);
  const auto per = cells_per_cc();
  return {ci * per[0], cj * per[1], ck * per[2]};
}

namespace {

std::vector<index_t> box_cells(const GridSpec& spec, std::array<index_t, 3> o,
                               std::array<index_t, 3> n) {
  std::vector<index_t> cells;
  cells.reserve(static_cast<std::size_t>(n[0] * n[1] * n[2]));
  for (index_t k = 0; k < n[2]; ++k)
    for (index_t j = 0; j < n[1]; ++j)
      for (index_t i = 0; i < n[0]; ++i)
        cells.push_back(spec.cell(o[0] + i, o[1] + j, o[2] + k));
  return cells;
}

}  // namespace

std::vector<index_t> HierarchicalGrid::cells_of_coarse(index_t coarse_id) const {
  if (coarse_id < 0 || coarse_id >= num_coarse())
    throw std::out_of_range("cells_of_coarse: coarse index out of range");
  return box_cells(spec, coarse_origin(coarse_id), cells_per_c);
}

std::vector<index_t> HierarchicalGrid::cells_of_coarse_coarse(index_t cc_id) const {
  if (cc_id < 0 || cc_id >= num_coarse_coarse())
    throw std::out_of_range("cells_of_coarse_coarse: index out of range");
  return box_cells(spec, cc_origin(cc_id), cells_per_cc());
}

std::vector<index_t> HierarchicalGrid::coarse_children(index_t cc_id) const {
  if (cc_id < 0 || cc_id >= num_coarse_coarse())
    throw std::out_of_range("coarse_children: index out of range");
  const index_t ci = cc_id % ncc[0];
  const index_t cj = (cc_id / ncc[0]) % ncc[1];
  const index_t ck = cc_id / (ncc[0] * ncc[1]);
  std::vector<index_t> children;
  children.reserve(static_cast<std::size_t>(sd * sd * sd));
  for (index_t dk = 0; dk < sd; ++dk)
    for (index_t dj = 0; dj < sd; ++dj)
      for (index_t di = 0; di < sd; ++di)
        children.push_back(
            coarse_index(ci * sd + di, cj * sd + dj, ck * sd + dk));
  return children;
}

HierarchicalGrid build_hierarchy(const GridSpec& spec,
                                 std::array<index_t, 3> ncc, index_t sd) {
  if (ncc[0] <= 0 || ncc[1] <= 0 || ncc[2] <= 0 || sd <= 0)
    throw ConfigError("build_hierarchy: ncc and sd must be positive");
  const index_t n[3] = {spec.nx, spec.ny, spec.nz};
  HierarchicalGrid h;
  h.spec = spec;
  h.ncc = ncc;
  h.sd = sd;
  for (int a = 0; a < 3; ++a) {
    const index_t div = ncc[a] * sd;
    if (n[a] % div != 0) {
      std::ostringstream msg;
      msg << "build_hierarchy: axis " << a << " has " << n[a]
          << " cells, not divisible by ncc*sd = " << ncc[a] << "*" << sd
          << " = " << div;
      throw ConfigError(msg.str());
    }
    h.nc[a] = div;
    h.cells_per_c[a] = n[a] / div;
  }
  return h;
}

std::vector<double> interpolate_design(const std::vector<double>& values_lo,
                                       const GridSpec& grid_lo,
                                       const GridSpec& grid_hi) {
  if (static_cast<index_t>(values_lo.size()) != grid_lo.num_cells())
    throw ConfigError("interpolate_design: field size does not match grid");
  const index_t n_lo[3] = {grid_lo.nx, grid_lo.ny, grid_lo.nz};
  const index_t n_hi[3] = {grid_hi.nx, grid_hi.ny, grid_hi.nz};
  index_t factor[3];
  for (int a = 0; a < 3; ++a) {
    if (n_hi[a] % n_lo[a] != 0)
      throw ConfigError("interpolate_design: non-integer refinement factor");
    factor[a] = n_hi[a] / n_lo[a];
  }
  std::vector<double> values_hi(static_cast<std::size_t>(grid_hi.num_cells()));
  for (index_t k = 0; k < grid_hi.nz; ++k)
    for (index_t j = 0; j < grid_hi.ny; ++j)
      for (index_t i = 0; i < grid_hi.nx; ++i)
        values_hi[static_cast<std::size_t>(grid_hi.cell(i, j, k))] =
            values_lo[static_cast<std::size_t>(grid_lo.cell(
                i / factor[0], j / factor[1], k / factor[2]))];
  return values_hi;
}

}  // namespace topmg
