#pragma once

#include <vector>

#include "topmg/grid.hpp"

namespace topmg {

/// SIMP two-material model: power-law interpolation between a low-conductive,
/// heat-generating material (x = 0) and a high-conductive, inert one (x = 1).
///   kappa(x) = kappa_lo + x^p (kappa_hi - kappa_lo)
///   f(x)     = f0 (1 - x^p)
struct MaterialModel {
  double kappa_lo = 1.0;
  double kappa_hi = 1.0e6;
  double f0 = 1.0;
  int p = 3;

  MaterialModel() = default;
  MaterialModel(double kappa_lo_, double kappa_hi_, double f0_, int p_);

  /// kappa_hi = kappa_lo * 10^cr.
  static MaterialModel from_contrast(int cr, double kappa_lo = 1.0,
                                     double f0 = 1.0, int p = 3);
};

/// Per-cell design variables in [0,1] on a structured grid.
struct DesignField {
  GridSpec grid;
  std::vector<double> values;

  DesignField() = default;
  DesignField(const GridSpec& grid_, double fill);
  DesignField(const GridSpec& grid_, std::vector<double> values_);

  double volume_fraction() const;
  void clamp();
};

std::vector<double> conductivity(const DesignField& x, const MaterialModel& m);
std::vector<double> heat_source(const DesignField& x, const MaterialModel& m);

struct MaterialDerivatives {
  std::vector<double> dkappa_dx;
  std::vector<double> dsource_dx;
};

/// dkappa/dx = p x^(p-1) (kappa_hi - kappa_lo), dsource/dx = -p x^(p-1) f0.
/// At x = 0 with p >= 2 both derivatives are exactly zero.
MaterialDerivatives material_derivatives(const DesignField& x,
                                         const MaterialModel& m);

}  // namespace topmg
