#include "topmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "topmg/parallel.hpp"

namespace topmg {

SparseOperator::SparseOperator(index_t rows, index_t cols,
                               std::vector<index_t> row_offsets,
                               std::vector<index_t> col_indices,
                               std::vector<double> values, bool symmetric)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)),
      symmetric_(symmetric) {
  if (static_cast<index_t>(row_offsets_.size()) != rows_ + 1 ||
      col_indices_.size() != values_.size())
    throw std::invalid_argument("SparseOperator: inconsistent CSR arrays");
}

SparseOperator SparseOperator::from_triplets(index_t rows, index_t cols,
                                             std::vector<Triplet> triplets,
                                             bool symmetric) {
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("from_triplets: entry out of range");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  std::vector<index_t> offsets(static_cast<std::size_t>(rows) + 1, 0);
  std::vector<index_t> cols_out;
  std::vector<double> vals_out;
  cols_out.reserve(triplets.size());
  vals_out.reserve(triplets.size());
  std::size_t i = 0;
  while (i < triplets.size()) {
    const index_t r = triplets[i].row;
    const index_t c = triplets[i].col;
    double sum = 0.0;
    while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
      sum += triplets[i++].value;
    cols_out.push_back(c);
    vals_out.push_back(sum);
    ++offsets[static_cast<std::size_t>(r) + 1];
  }
  for (index_t r = 0; r < rows; ++r)
    offsets[static_cast<std::size_t>(r) + 1] +=
        offsets[static_cast<std::size_t>(r)];
  return SparseOperator(rows, cols, std::move(offsets), std::move(cols_out),
                        std::move(vals_out), symmetric);
}

SparseOperator SparseOperator::identity(index_t n) {
  std::vector<index_t> offsets(static_cast<std::size_t>(n) + 1);
  std::iota(offsets.begin(), offsets.end(), index_t{0});
  std::vector<index_t> cols(static_cast<std::size_t>(n));
  std::iota(cols.begin(), cols.end(), index_t{0});
  std::vector<double> vals(static_cast<std::size_t>(n), 1.0);
  return SparseOperator(n, n, std::move(offsets), std::move(cols),
                        std::move(vals), true);
}

void SparseOperator::apply(std::span<const double> x,
                           std::span<double> y) const {
  if (static_cast<index_t>(x.size()) != cols_ ||
      static_cast<index_t>(y.size()) != rows_)
    throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
  parallel_for(0, rows_, [&](index_t r) {
    double sum = 0.0;
    for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      sum += values_[static_cast<std::size_t>(p)] *
             x[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(p)])];
    y[static_cast<std::size_t>(r)] = sum;
  });
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<std::size_t>(rows_));
  apply(std::span<const double>(x), std::span<double>(y));
  return y;
}

void SparseOperator::apply_add(std::span<const double> x, std::span<double> y,
                               double alpha, double beta) const {
  if (static_cast<index_t>(x.size()) != cols_ ||
      static_cast<index_t>(y.size()) != rows_)
    throw std::invalid_argument("SparseOperator::apply_add: dimension mismatch");
  parallel_for(0, rows_, [&](index_t r) {
    double sum = 0.0;
    for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      sum += values_[static_cast<std::size_t>(p)] *
             x[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(p)])];
    y[static_cast<std::size_t>(r)] =
        alpha * sum + beta * y[static_cast<std::size_t>(r)];
  });
}

std::vector<double> SparseOperator::apply_transpose(
    const std::vector<double>& x) const {
  if (static_cast<index_t>(x.size()) != rows_)
    throw std::invalid_argument(
        "SparseOperator::apply_transpose: dimension mismatch");
  std::vector<double> y(static_cast<std::size_t>(cols_), 0.0);
  for (index_t r = 0; r < rows_; ++r) {
    const double xr = x[static_cast<std::size_t>(r)];
    if (xr == 0.0) continue;
    for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      y[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(p)])] +=
          values_[static_cast<std::size_t>(p)] * xr;
  }
  return y;
}

SparseOperator SparseOperator::transposed() const {
  std::vector<index_t> offsets(static_cast<std::size_t>(cols_) + 2, 0);
  for (index_t c : col_indices_) ++offsets[static_cast<std::size_t>(c) + 2];
  for (std::size_t i = 2; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<index_t> cols_out(values_.size());
  std::vector<double> vals_out(values_.size());
  for (index_t r = 0; r < rows_; ++r) {
    for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
      const index_t c = col_indices_[static_cast<std::size_t>(p)];
      const index_t slot = offsets[static_cast<std::size_t>(c) + 1]++;
      cols_out[static_cast<std::size_t>(slot)] = r;
      vals_out[static_cast<std::size_t>(slot)] =
          values_[static_cast<std::size_t>(p)];
    }
  }
  offsets.pop_back();
  return SparseOperator(cols_, rows_, std::move(offsets), std::move(cols_out),
                        std::move(vals_out), symmetric_);
}

SparseOperator SparseOperator::multiply(const SparseOperator& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("SparseOperator::multiply: dimension mismatch");
  const index_t n_out_cols = other.cols_;

  // Pass 1: row sizes. Pass 2: values. Rows are independent, so both passes
  // parallelize with deterministic per-row accumulation order.
  std::vector<index_t> offsets(static_cast<std::size_t>(rows_) + 1, 0);
  {
    std::vector<std::vector<index_t>> marker_pool;
    parallel_for_with_scratch(
        0, rows_,
        [&]() -> std::vector<index_t> {
          return std::vector<index_t>(static_cast<std::size_t>(n_out_cols), -1);
        },
        [&](index_t r, std::vector<index_t>& marker) {
          index_t count = 0;
          for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
               p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
            const index_t k = col_indices_[static_cast<std::size_t>(p)];
            for (index_t q = other.row_offsets_[static_cast<std::size_t>(k)];
                 q < other.row_offsets_[static_cast<std::size_t>(k) + 1]; ++q) {
              const index_t c = other.col_indices_[static_cast<std::size_t>(q)];
              if (marker[static_cast<std::size_t>(c)] != r) {
                marker[static_cast<std::size_t>(c)] = r;
                ++count;
              }
            }
          }
          offsets[static_cast<std::size_t>(r) + 1] = count;
        });
  }
  for (index_t r = 0; r < rows_; ++r)
    offsets[static_cast<std::size_t>(r) + 1] +=
        offsets[static_cast<std::size_t>(r)];

  std::vector<index_t> cols_out(
      static_cast<std::size_t>(offsets[static_cast<std::size_t>(rows_)]));
  std::vector<double> vals_out(cols_out.size());

  struct Scratch {
    std::vector<double> accum;
    std::vector<index_t> marker;
    std::vector<index_t> nonzeros;
  };
  parallel_for_with_scratch(
      0, rows_,
      [&]() -> Scratch {
        Scratch s;
        s.accum.assign(static_cast<std::size_t>(n_out_cols), 0.0);
        s.marker.assign(static_cast<std::size_t>(n_out_cols), -1);
        return s;
      },
      [&](index_t r, Scratch& s) {
        s.nonzeros.clear();
        for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
             p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
          const index_t k = col_indices_[static_cast<std::size_t>(p)];
          const double av = values_[static_cast<std::size_t>(p)];
          for (index_t q = other.row_offsets_[static_cast<std::size_t>(k)];
               q < other.row_offsets_[static_cast<std::size_t>(k) + 1]; ++q) {
            const index_t c = other.col_indices_[static_cast<std::size_t>(q)];
            if (s.marker[static_cast<std::size_t>(c)] != r) {
              s.marker[static_cast<std::size_t>(c)] = r;
              s.accum[static_cast<std::size_t>(c)] = 0.0;
              s.nonzeros.push_back(c);
            }
            s.accum[static_cast<std::size_t>(c)] +=
                av * other.values_[static_cast<std::size_t>(q)];
          }
        }
        std::sort(s.nonzeros.begin(), s.nonzeros.end());
        index_t slot = offsets[static_cast<std::size_t>(r)];
        for (index_t c : s.nonzeros) {
          cols_out[static_cast<std::size_t>(slot)] = c;
          vals_out[static_cast<std::size_t>(slot)] =
              s.accum[static_cast<std::size_t>(c)];
          ++slot;
        }
      });

  return SparseOperator(rows_, n_out_cols, std::move(offsets),
                        std::move(cols_out), std::move(vals_out), false);
}

double SparseOperator::coeff(index_t row, index_t col) const {
  const index_t lo = row_offsets_[static_cast<std::size_t>(row)];
  const index_t hi = row_offsets_[static_cast<std::size_t>(row) + 1];
  const auto begin = col_indices_.begin() + lo;
  const auto end = col_indices_.begin() + hi;
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(lo + (it - begin))];
}

std::vector<double> SparseOperator::diagonal() const {
  const index_t n = std::min(rows_, cols_);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = coeff(i, i);
  return d;
}

bool SparseOperator::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (index_t r = 0; r < rows_; ++r)
    for (index_t p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
      const index_t c = col_indices_[static_cast<std::size_t>(p)];
      const double diff =
          std::abs(values_[static_cast<std::size_t>(p)] - coeff(c, r));
      if (diff > tol) return false;
    }
  return true;
}

SparseOperator galerkin_product(const SparseOperator& restriction,
                                const SparseOperator& a) {
  SparseOperator ra = restriction.multiply(a);
  SparseOperator result = ra.multiply(restriction.transposed());
  return SparseOperator(result.rows(), result.cols(),
                        std::vector<index_t>(result.row_offsets()),
                        std::vector<index_t>(result.col_indices()),
                        std::vector<double>(result.values()),
                        /*symmetric=*/a.symmetric());
}

void write_matrix_market(const SparseOperator& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const bool sym = a.symmetric();
  out << "%%MatrixMarket matrix coordinate real "
      << (sym ? "symmetric" : "general") << "\n";
  index_t count = 0;
  for (index_t r = 0; r < a.rows(); ++r)
    for (index_t p = a.row_offsets()[static_cast<std::size_t>(r)];
         p < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p)
      if (!sym || a.col_indices()[static_cast<std::size_t>(p)] <= r) ++count;
  out << a.rows() << " " << a.cols() << " " << count << "\n";
  char buf[64];
  for (index_t r = 0; r < a.rows(); ++r)
    for (index_t p = a.row_offsets()[static_cast<std::size_t>(r)];
         p < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++p) {
      const index_t c = a.col_indices()[static_cast<std::size_t>(p)];
      if (sym && c > r) continue;
      std::snprintf(buf, sizeof(buf), "%.17g",
                    a.values()[static_cast<std::size_t>(p)]);
      out << (r + 1) << " " << (c + 1) << " " << buf << "\n";
    }
}

}  // namespace topmg
