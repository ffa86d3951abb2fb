/** @file ansatz.hpp
 *  @brief The compressed-bump bending ansatz, its limit identities, component scalings and the
 *  compressiveness scaling study.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "shellbuckle/cyl_fields.hpp"
#include "shellbuckle/material.hpp"
#include "shellbuckle/scaling.hpp"

namespace shellbuckle {

/// Dense polynomial, coefficients in increasing degree.
struct Poly {
  std::vector<double> c;

  double operator()(double x) const;
  Poly derivative(int k = 1) const;
  Poly operator*(const Poly& o) const;
  double integral(double a, double b) const;
};

/// phi(eta, z) = A * P(eta - kappa (z - L/2)) * Q(z) with P(x) = (1 - (x/eta0)^2)^5 on |x| < eta0 and
/// Q(z) = (z (L - z) / L^2)^5. kappa = 0 gives the symmetric bump; kappa != 0 tilts the support.
class BumpProfile {
 public:
  BumpProfile(double eta0, double L, double kappa = 0.0, double amplitude = 1.0);

  double eta0() const { return eta0_; }
  double L() const { return L_; }
  double kappa() const { return kappa_; }
  double amplitude() const { return amplitude_; }
  /// Half-width of the support in eta over all z.
  double eta_extent() const;

  /// d^a/deta^a d^b/dz^b phi, a + b <= 6.
  double d(int a, int b, double eta, double z) const;
  /// All partials d(a, b) with a <= 4, b <= 2 at one point.
  std::array<std::array<double, 3>, 5> jet(double eta, double z) const;
  /// ||d_eta^a d_z^b phi||^2 over R x (0, L), exact.
  double norm_sq(int a, int b) const;

 private:
  double eta0_, L_, kappa_, amplitude_;
  std::vector<Poly> P_, Q_;  // derivatives 0..6
};

/// floor(h^{-1/4}), robust to rounding at exact fourth powers.
int ansatz_wavenumber(double h);

struct AnsatzField {
  double h = 0.0;
  int n_h = 0;
  DisplacementField field;
  double theta_half_width = 0.0;  // support of phi(n_h theta, z) in theta
};

/// U(f) with f = (-phi_tt, phi_t, -phi_z) and phi^h(theta, z) = phi(n_h theta, z); FixedBottom.
AnsatzField build_ansatz(double h, const BumpProfile& bump, const ShellGeometry& g);

/// Volume grid on the theta support of the ansatz; `refine` multiplies the panel counts.
QuadratureGrid ansatz_grid(const AnsatzField& a, const ShellGeometry& g, int refine = 1);

struct ScalingRow {
  double h = 0.0;
  double value = 0.0;
  double normalized = 0.0;  // value / h^predicted (or the stated normalization)
  double deviation = 0.0;   // normalized / limit - 1 when a limit is known
};

struct ScalingQuantity {
  std::string name;
  double predicted_exponent = 0.0;
  std::optional<double> limit;
  std::vector<ScalingRow> rows;
  std::optional<ScalingFit> fit;
  std::vector<double> excluded_h;
};

struct ScalingReport {
  std::vector<ScalingQuantity> quantities;

  const ScalingQuantity& at(const std::string& name) const;
};

/// h^{1/4}||grad U||^2 against ||phi_eee||^2 ("grad") and twice that ("grad_corrected"), and
/// h^{-5/4}||e(U)||^2 against ||phi_zz||^2 + ||phi_eeee||^2 / 12 ("strain"). h must be n^{-4}.
ScalingReport verify_limits(const BumpProfile& bump, const std::vector<double>& h_list, const ShellGeometry& g,
                            int jobs = 1);

/// Gradient-entry groups "rt+tr", "zr+rz", "tz+zt", "tt+zz" and "ur" (||U_r||^2), each fitted in h.
ScalingReport component_scalings(const BumpProfile& bump, const std::vector<double>& h_list, const ShellGeometry& g,
                                 int jobs = 1);

/// S_h / C_h on the ansatz per h with a fitted exponent ("ratio"); points with C <= 0 are excluded.
ScalingReport compressiveness_scaling(const BumpProfile& bump, const std::vector<double>& h_list,
                                      const ShellGeometry& g, const Material& mat, const StressWeight& stress,
                                      int jobs = 1);

/// Predicted S/C exponent for a stress weight: 1 (perfect), 5/4 (shear), 3/2 (hoop).
double predicted_compressiveness_exponent(const StressWeight& stress);

}  // namespace shellbuckle
