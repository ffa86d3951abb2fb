/** @file material.hpp
 *  @brief Isotropic material data, shell geometry, the trivial branch and stress weights.
 */
#pragma once

#include <array>
#include <functional>
#include <variant>

namespace shellbuckle {

struct Material {
  double E = 1.0;
  double nu = 0.3;
  double mu = 0.0;
  double lambda_lame = 0.0;
  double Lambda = 0.0;  // 2 nu / (1 - 2 nu)

  /// Isotropic energy density lambda (tr e)^2 + 2 mu |e|^2 for a symmetric 3x3 e.
  double energy_density(const std::array<std::array<double, 3>, 3>& e) const;
  /// Coercivity constant of the isotropic tensor: (L0 e, e) >= alpha |e|^2.
  double coercivity() const { return 2.0 * mu; }
};

Material derive_material(double E, double nu);

struct ShellGeometry {
  double h = 1e-2;
  double L = 3.141592653589793;

  double r_inner() const { return 1.0 - 0.5 * h; }
  double r_outer() const { return 1.0 + 0.5 * h; }
};

/// Validates 0 < h < 1 and L > 0.
ShellGeometry make_geometry(double h, double L);

struct TrivialBranch {
  double load = 0.0;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // |E b (1-b)(2-b) - 2 lambda|
};

/// Largest admissible load E / (3 sqrt 3).
double trivial_branch_limit(const Material& mat);
TrivialBranch solve_trivial_branch(const Material& mat, double load);

using Sym3 = std::array<std::array<double, 3>, 3>;
using ThetaFn = std::function<double(double)>;

struct PerfectStress {};
struct ShearImperfection {
  ThetaFn s, ds, t;
};
struct HoopImperfection {
  ThetaFn sigma_tt;
};

/// Unit-normalized linearized stress in cylindrical components (r, theta, z).
class StressWeight {
 public:
  using Kind = std::variant<PerfectStress, ShearImperfection, HoopImperfection>;

  explicit StressWeight(Kind kind);
  Sym3 operator()(double theta, double z) const;
  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
};

StressWeight perfect_stress();
StressWeight shear_imperfection(ThetaFn s, ThetaFn ds, ThetaFn t);
StressWeight hoop_imperfection(ThetaFn sigma_tt);

}  // namespace shellbuckle
