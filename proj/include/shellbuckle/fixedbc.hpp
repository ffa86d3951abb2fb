/** @file fixedbc.hpp
 *  @brief Two-mode (m, m+2) test fields compatible with a clamped bottom edge, and their approach to
 *  the classical load.
 */
#pragma once

#include <vector>

#include "shellbuckle/cyl_fields.hpp"
#include "shellbuckle/material.hpp"

namespace shellbuckle {

/// gamma(m, n) = 1/m^ + Lambda m^ / ((Lambda + 2) n^2).
double fixedbc_gamma(int m, int n, double L, double Lambda);

/// Un-simplified axial coefficient ((L+2) n^2 - L m^2) / ((L+2)(n^2 + m^2)^2); tends to 1/n^2.
double fixedbc_T(int m, int n, double L, double Lambda);

/// Simplified: 1/n^2 axial coefficient and gamma(m, n). Full: common T(m, n) axial coefficient and the
/// exact per-mode minimizer of Q0 over the circumferential coefficient.
enum class FixedBCVariant { Simplified, Full };

struct FixedBCMode {
  int m = 1, n = 1;
  FixedBCVariant variant = FixedBCVariant::Simplified;
  double m_hat = 0.0, m2_hat = 0.0;  // m^ and (m+2)^
  // Fourier coefficients on sin(m^ z) / cos(m^ z), index 0 for m, 1 for m + 2
  double fr[2] = {0.0, 0.0};
  double ft[2] = {0.0, 0.0};
  double fz[2] = {0.0, 0.0};
  DisplacementField field;  // U(f), FixedBottom

  /// (sum m fr^(m), sum fz^(m)); both vanish for the clamped family.
  std::pair<double, double> constraint_residuals() const;
};

/// n = 0 selects n(m) on the Koiter circle. Requires m + 2 <= M(h).
FixedBCMode fixedbc_mode(int m, const ShellGeometry& g, const Material& mat, int n = 0,
                         FixedBCVariant variant = FixedBCVariant::Simplified);

/// Full-quadrature K0 of the mode (single circumferential period, exact in theta).
double fixedbc_K0(const FixedBCMode& mode, const ShellGeometry& g, const Material& mat);

/// (2 + (m+2)^2/m^2 + m^2/(m+2)^2) / 4, the finite-m value of the normalized limit.
double fixedbc_limit_expression(int m);

/// m(h) = round(c h^{-alpha}); alpha must lie in (0, 1/2).
int fixedbc_m(double h, double alpha, double c = 1.0);

struct FixedBCRow {
  double h = 0.0;
  int m = 0, n = 0;
  double K0 = 0.0;
  double ratio = 0.0;             // K0 / (2 mu h sqrt((Lambda+1)/3))
  double limit_expression = 0.0;  // fixedbc_limit_expression(m)
};

std::vector<FixedBCRow> fixedbc_limit(const std::vector<double>& h_list, double alpha, double L, const Material& mat,
                                      double c = 1.0, int jobs = 1,
                                      FixedBCVariant variant = FixedBCVariant::Simplified);

}  // namespace shellbuckle
