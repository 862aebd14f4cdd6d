#include "topmg/material.hpp"

#include <algorithm>
#include <cmath>

namespace topmg {

MaterialModel::MaterialModel(double kappa_lo_, double kappa_hi_, double f0_,
                             int p_)
    : kappa_lo(kappa_lo_), kappa_hi(kappa_hi_), f0(f0_), p(p_) {
  if (!(kappa_lo > 0.0) || !(kappa_hi > kappa_lo))
    throw ConfigError("MaterialModel: requires 0 < kappa_lo < kappa_hi");
  if (f0 < 0.0) throw ConfigError("MaterialModel: f0 must be nonnegative");
  if (p < 1) throw ConfigError("MaterialModel: penalization p must be >= 1");
}

MaterialModel MaterialModel::from_contrast(int cr, double kappa_lo, double f0,
                                           int p) {
  if (cr < 1) throw ConfigError("MaterialModel: contrast exponent must be >= 1");
  return MaterialModel(kappa_lo, kappa_lo * std::pow(10.0, cr), f0, p);
}

DesignField::DesignField(const GridSpec& grid_, double fill)
    : grid(grid_),
      values(static_cast<std::size_t>(grid_.num_cells()), fill) {}

DesignField::DesignField(const GridSpec& grid_, std::vector<double> values_)
    : grid(grid_), values(std::move(values_)) {
  if (static_cast<index_t>(values.size()) != grid.num_cells())
    throw ConfigError("DesignField: value count does not match grid");
}

double DesignField::volume_fraction() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

void DesignField::clamp() {
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
}

namespace {

inline double int_pow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

std::vector<double> conductivity(const DesignField& x, const MaterialModel& m) {
  std::vector<double> kappa(x.values.size());
  const double dk = m.kappa_hi - m.kappa_lo;
  for (std::size_t c = 0; c < x.values.size(); ++c)
    kappa[c] = m.kappa_lo + int_pow(x.values[c], m.p) * dk;
  return kappa;
}

std::vector<double> heat_source(const DesignField& x, const MaterialModel& m) {
  std::vector<double> f(x.values.size());
  for (std::size_t c = 0; c < x.values.size(); ++c)
    f[c] = m.f0 * (1.0 - int_pow(x.values[c], m.p));
  return f;
}

MaterialDerivatives material_derivatives(const DesignField& x,
                                         const MaterialModel& m) {
  MaterialDerivatives d;
  d.dkappa_dx.resize(x.values.size());
  d.dsource_dx.resize(x.values.size());
  const double dk = m.kappa_hi - m.kappa_lo;
  const double p = static_cast<double>(m.p);
  for (std::size_t c = 0; c < x.values.size(); ++c) {
    const double xp1 = m.p >= 2 ? int_pow(x.values[c], m.p - 1) : 1.0;
    d.dkappa_dx[c] = p * xp1 * dk;
    d.dsource_dx[c] = -p * xp1 * m.f0;
  }
  return d;
}

}  // namespace topmg
