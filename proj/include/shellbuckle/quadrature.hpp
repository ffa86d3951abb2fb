/** @file quadrature.hpp
 *  @brief 1-D Gauss-Legendre rules and composite/periodic variants.
 */
#pragma once

#include <vector>

namespace shellbuckle {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// n-point Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre: `panels` equal panels with `per_panel` nodes each.
Rule1D composite_gauss(int panels, int per_panel, double a, double b);

/// Uniform periodic trapezoid on [a, a + period) with n nodes.
Rule1D periodic_trapezoid(int n, double a, double period);

}  // namespace shellbuckle
