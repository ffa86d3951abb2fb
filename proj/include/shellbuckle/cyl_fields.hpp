/** @file cyl_fields.hpp
 *  @brief Displacement fields in cylindrical components, gradients, strains, and the
 *  stability / compressiveness functionals evaluated by tensor quadrature.
 */
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>

#include "shellbuckle/material.hpp"
#include "shellbuckle/quadrature.hpp"

namespace shellbuckle {

using Mat3 = std::array<std::array<double, 3>, 3>;  // rows/cols ordered (r, theta, z)

struct CylPoint {
  double r = 1.0, theta = 0.0, z = 0.0;
};

/// Value and first partials of one component.
struct Jet1 {
  double v = 0.0, r = 0.0, t = 0.0, z = 0.0;
};

struct FieldJet {
  Jet1 ur, ut, uz;
  // second (theta, z) partials of u_r; only meaningful for order-2 fields
  double ur_tt = 0.0, ur_tz = 0.0, ur_zz = 0.0;
};

/// Mid-surface profile values: f_r to second order, f_theta and f_z to first order.
struct ProfileJet {
  double fr = 0, fr_t = 0, fr_z = 0, fr_tt = 0, fr_tz = 0, fr_zz = 0;
  double ft = 0, ft_t = 0, ft_z = 0;
  double fz = 0, fz_t = 0, fz_z = 0;
};

using MidSurfaceProfile = std::function<ProfileJet(double theta, double z)>;

enum class BcTag { None, AverageTop, FixedBottom };

class DisplacementField {
 public:
  using Eval = std::function<FieldJet(const CylPoint&)>;

  DisplacementField() = default;
  DisplacementField(Eval eval, int order, BcTag bc = BcTag::None);

  FieldJet operator()(const CylPoint& p) const { return eval_(p); }
  /// 1: first partials; 2: additionally the (theta, z) second partials of u_r.
  int order() const { return order_; }
  BcTag bc() const { return bc_; }
  /// Non-null when the field was built as U(f) from a mid-surface profile.
  const MidSurfaceProfile* profile() const { return profile_.get(); }

  DisplacementField with_bc(BcTag bc) const;
  DisplacementField scaled(double s) const;

  friend DisplacementField lift_profile(MidSurfaceProfile f, BcTag bc);

 private:
  Eval eval_;
  int order_ = 1;
  BcTag bc_ = BcTag::None;
  std::shared_ptr<const MidSurfaceProfile> profile_;
};

/// U(f): u_r = f_r, u_theta = r f_theta - (r-1) f_r,theta, u_z = f_z - (r-1) f_r,z.
DisplacementField lift_profile(MidSurfaceProfile f, BcTag bc = BcTag::None);

/// Cylindrical gradient (rows: component, columns: derivative direction).
Mat3 gradient(const DisplacementField& u, const CylPoint& p);
Mat3 gradient(const FieldJet& j, double r);
Mat3 sym(const Mat3& a);
double frob_sq(const Mat3& a);
Mat3 operator-(const Mat3& a, const Mat3& b);

/// G(u): the gradient with the 1/r factor dropped on the (theta,theta) and (z,theta) entries.
Mat3 simplified_G(const FieldJet& j, double r);
/// A(u): all 1/r factors dropped.
Mat3 simplified_A(const FieldJet& j);

enum class Measure { Volume, Flat, Surface };

struct QuadratureGrid {
  Rule1D r, theta, z;
  Measure measure = Measure::Volume;

  double weight(std::size_t i, std::size_t j, std::size_t k) const;
  double total_measure() const;
};

/// Tensor grid on C_h: Gauss-Legendre in r, periodic trapezoid in theta, composite Gauss in z.
QuadratureGrid make_grid(const ShellGeometry& g, int nr, int ntheta, int z_panels, int z_per_panel = 8,
                         Measure measure = Measure::Volume);
/// Grid resolving trig modes up to circumferential order n and axial order m exactly.
QuadratureGrid make_mode_grid(const ShellGeometry& g, int m, int n, Measure measure = Measure::Volume);

/// Sum over grid nodes of w * fn(point, jet); deterministic order.
template <std::size_t K>
using Accum = std::array<double, K>;

template <std::size_t K, class Fn>
Accum<K> integrate(const DisplacementField& u, const QuadratureGrid& grid, Fn&& fn) {
  Accum<K> acc{};
  for (std::size_t k = 0; k < grid.z.size(); ++k)
    for (std::size_t j = 0; j < grid.theta.size(); ++j)
      for (std::size_t i = 0; i < grid.r.size(); ++i) {
        const CylPoint p{grid.r.x[i], grid.theta.x[j], grid.z.x[k]};
        const FieldJet jet = u(p);
        const Accum<K> v = fn(p, jet);
        const double w = grid.weight(i, j, k);
        for (std::size_t q = 0; q < K; ++q) acc[q] += w * v[q];
      }
  return acc;
}

struct FunctionalValue {
  double S = 0.0;
  double C = 0.0;
  /// K = S / C; throws DomainError when C <= 0 (not a destabilizing variation).
  double ratio() const;
};

FunctionalValue functionals(const DisplacementField& u, const StressWeight& stress, const Material& mat,
                            const QuadratureGrid& grid);

struct FunctionalFamily {
  double K = 0.0;   // S / C with perfect stress
  double K1 = 0.0;  // S / ||u_r,z||^2
  double K0 = 0.0;  // int r^{-1}(L0 E, E) / ||u_r,z||^2
  std::optional<double> Kstar;  // mu (Q0 + h^2/12 Q1*) / B on the mid-surface profile
  double S = 0.0, C = 0.0, urz_sq = 0.0, S0 = 0.0;
};

FunctionalFamily functional_family(const DisplacementField& u, const Material& mat, const ShellGeometry& g,
                                   const QuadratureGrid& grid);

/// K* from the mid-surface profile alone (surface grid: theta and z rules of `grid`).
double kstar(const MidSurfaceProfile& f, const Material& mat, const ShellGeometry& g, const QuadratureGrid& grid);

/// Radial linearization L(u); requires an order-2 field.
DisplacementField linearize_radial(const DisplacementField& u, const ShellGeometry& g, int nr = 8);

struct BcReport {
  bool ok = true;
  double max_violation = 0.0;
  double bottom_mean_uz = 0.0;
};

/// Samples 64 boundary points per edge and checks the tag's conditions.
BcReport verify_bc(const DisplacementField& u, const ShellGeometry& g, BcTag tag);
BcReport verify_bc(const DisplacementField& u, const ShellGeometry& g);

}  // namespace shellbuckle
