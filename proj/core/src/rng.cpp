#include "topmg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace topmg {

std::vector<double> uniform_field(index_t count, std::uint64_t seed) {
  Lcg64 rng(seed);
  std::vector<double> values(static_cast<std::size_t>(count));
  for (double& v : values) v = rng.next_uniform();
  return values;
}

DesignField frozen_bench_design(const GridSpec& grid, double vstar,
                                std::uint64_t seed, int smoothing_passes) {
  const index_t m = grid.num_cells();
  std::vector<double> field = uniform_field(m, seed);

  std::vector<double> next(field.size());
  for (int pass = 0; pass < smoothing_passes; ++pass) {
    for (index_t k = 0; k < grid.nz; ++k)
      for (index_t j = 0; j < grid.ny; ++j)
        for (index_t i = 0; i < grid.nx; ++i) {
          double sum = field[static_cast<std::size_t>(grid.cell(i, j, k))];
          int n = 1;
          if (i > 0) { sum += field[static_cast<std::size_t>(grid.cell(i - 1, j, k))]; ++n; }
          if (i < grid.nx - 1) { sum += field[static_cast<std::size_t>(grid.cell(i + 1, j, k))]; ++n; }
          if (j > 0) { sum += field[static_cast<std::size_t>(grid.cell(i, j - 1, k))]; ++n; }
          if (j < grid.ny - 1) { sum += field[static_cast<std::size_t>(grid.cell(i, j + 1, k))]; ++n; }
          if (k > 0) { sum += field[static_cast<std::size_t>(grid.cell(i, j, k - 1))]; ++n; }
          if (k < grid.nz - 1) { sum += field[static_cast<std::size_t>(grid.cell(i, j, k + 1))]; ++n; }
          next[static_cast<std::size_t>(grid.cell(i, j, k))] = sum / n;
        }
    field.swap(next);
  }

  const index_t solid = std::min<index_t>(
      m, static_cast<index_t>(std::ceil(vstar * static_cast<double>(m))));
  std::vector<index_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(), [&](index_t a, index_t b) {
    const double va = field[static_cast<std::size_t>(a)];
    const double vb = field[static_cast<std::size_t>(b)];
    return va != vb ? va > vb : a < b;
  });

  DesignField design(grid, 0.0);
  for (index_t r = 0; r < solid; ++r)
    design.values[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = 1.0;
  return design;
}

}  // namespace topmg
