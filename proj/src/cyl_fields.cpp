#include "shellbuckle/cyl_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shellbuckle/error.hpp"

namespace shellbuckle {

DisplacementField::DisplacementField(Eval eval, int order, BcTag bc) : eval_(std::move(eval)), order_(order), bc_(bc) {
  if (!eval_) throw ConfigError("DisplacementField: empty evaluator");
}

DisplacementField DisplacementField::with_bc(BcTag bc) const {
  DisplacementField out = *this;
  out.bc_ = bc;
  return out;
}

DisplacementField DisplacementField::scaled(double s) const {
  DisplacementField out = *this;
  auto inner = eval_;
  out.eval_ = [inner, s](const CylPoint& p) {
    FieldJet j = inner(p);
    for (Jet1* c : {&j.ur, &j.ut, &j.uz}) {
      c->v *= s;
      c->r *= s;
      c->t *= s;
      c->z *= s;
    }
    j.ur_tt *= s;
    j.ur_tz *= s;
    j.ur_zz *= s;
    return j;
  };
  if (profile_) {
    auto pf = profile_;
    out.profile_ = std::make_shared<const MidSurfaceProfile>([pf, s](double t, double z) {
      ProfileJet f = (*pf)(t, z);
      for (double* v : {&f.fr, &f.fr_t, &f.fr_z, &f.fr_tt, &f.fr_tz, &f.fr_zz, &f.ft, &f.ft_t, &f.ft_z, &f.fz,
                        &f.fz_t, &f.fz_z})
        *v *= s;
      return f;
    });
  }
  return out;
}

DisplacementField lift_profile(MidSurfaceProfile f, BcTag bc) {
  auto shared = std::make_shared<const MidSurfaceProfile>(std::move(f));
  DisplacementField out(
      [shared](const CylPoint& p) {
        const ProfileJet q = (*shared)(p.theta, p.z);
        const double r = p.r, s = p.r - 1.0;
        FieldJet j;
        j.ur = {q.fr, 0.0, q.fr_t, q.fr_z};
        j.ur_tt = q.fr_tt;
        j.ur_tz = q.fr_tz;
        j.ur_zz = q.fr_zz;
        j.ut = {r * q.ft - s * q.fr_t, q.ft - q.fr_t, r * q.ft_t - s * q.fr_tt, r * q.ft_z - s * q.fr_tz};
        j.uz = {q.fz - s * q.fr_z, -q.fr_z, q.fz_t - s * q.fr_tz, q.fz_z - s * q.fr_zz};
        return j;
      },
      2, bc);
  out.profile_ = shared;
  return out;
}

Mat3 gradient(const FieldJet& j, double r) {
  Mat3 g{};
  g[0] = {j.ur.r, (j.ur.t - j.ut.v) / r, j.ur.z};
  g[1] = {j.ut.r, (j.ut.t + j.ur.v) / r, j.ut.z};
  g[2] = {j.uz.r, j.uz.t / r, j.uz.z};
  return g;
}

Mat3 gradient(const DisplacementField& u, const CylPoint& p) {
  if (u.order() < 1) throw CapabilityError("gradient: field provides no first derivatives");
  return gradient(u(p), p.r);
}

Mat3 simplified_G(const FieldJet& j, double r) {
  Mat3 g{};
  g[0] = {j.ur.r, (j.ur.t - j.ut.v) / r, j.ur.z};
  g[1] = {j.ut.r, j.ut.t + j.ur.v, j.ut.z};
  g[2] = {j.uz.r, j.uz.t, j.uz.z};
  return g;
}

Mat3 simplified_A(const FieldJet& j) {
  Mat3 g{};
  g[0] = {j.ur.r, j.ur.t - j.ut.v, j.ur.z};
  g[1] = {j.ut.r, j.ut.t + j.ur.v, j.ut.z};
  g[2] = {j.uz.r, j.uz.t, j.uz.z};
  return g;
}

Mat3 sym(const Mat3& a) {
  Mat3 e{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) e[i][k] = 0.5 * (a[i][k] + a[k][i]);
  return e;
}

double frob_sq(const Mat3& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double v : row) s += v * v;
  return s;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) c[i][k] = a[i][k] - b[i][k];
  return c;
}

double QuadratureGrid::weight(std::size_t i, std::size_t j, std::size_t k) const {
  switch (measure) {
    case Measure::Volume:
      return r.w[i] * r.x[i] * theta.w[j] * z.w[k];
    case Measure::Flat:
      return r.w[i] * theta.w[j] * z.w[k];
    case Measure::Surface:
      return i == 0 ? theta.w[j] * z.w[k] : 0.0;
  }
  return 0.0;
}

double QuadratureGrid::total_measure() const {
  double s = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k)
    for (std::size_t j = 0; j < theta.size(); ++j)
      for (std::size_t i = 0; i < r.size(); ++i) s += weight(i, j, k);
  return s;
}

QuadratureGrid make_grid(const ShellGeometry& g, int nr, int ntheta, int z_panels, int z_per_panel, Measure measure) {
  QuadratureGrid grid;
  grid.measure = measure;
  if (measure == Measure::Surface) {
    grid.r.x = {1.0};
    grid.r.w = {1.0};
  } else {
    grid.r = gauss_legendre(nr, g.r_inner(), g.r_outer());
  }
  grid.theta = periodic_trapezoid(ntheta, 0.0, 2.0 * std::numbers::pi);
  grid.z = composite_gauss(z_panels, z_per_panel, 0.0, g.L);
  return grid;
}

QuadratureGrid make_mode_grid(const ShellGeometry& g, int m, int n, Measure measure) {
  // products of two modes of order n have theta-degree 2n; one z-panel per axial half wave
  return make_grid(g, 8, 4 * n + 8, std::max(2, m + 2), 10, measure);
}

double FunctionalValue::ratio() const {
  if (!(C > 0.0)) throw DomainError("functionals: C <= 0, not a destabilizing variation");
  return S / C;
}

FunctionalValue functionals(const DisplacementField& u, const StressWeight& stress, const Material& mat,
                            const QuadratureGrid& grid) {
  if (grid.measure != Measure::Volume) throw ConfigError("functionals: grid measure must be Volume");
  if (u.order() < 1) throw CapabilityError("functionals: field provides no first derivatives");
  const auto acc = integrate<2>(u, grid, [&](const CylPoint& p, const FieldJet& j) {
    const Mat3 g = gradient(j, p.r);
    const Mat3 e = sym(g);
    const Sym3 sig = stress(p.theta, p.z);
    double c = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (sig[a][b] == 0.0) continue;
        double gtg = 0.0;
        for (int k = 0; k < 3; ++k) gtg += g[k][a] * g[k][b];
        c += sig[a][b] * gtg;
      }
    return Accum<2>{mat.energy_density(e), c};
  });
  return {acc[0], acc[1]};
}

double kstar(const MidSurfaceProfile& f, const Material& mat, const ShellGeometry& g, const QuadratureGrid& grid) {
  const double Lam = mat.Lambda;
  double q0 = 0.0, q1 = 0.0, b = 0.0;
  for (std::size_t k = 0; k < grid.z.size(); ++k)
    for (std::size_t j = 0; j < grid.theta.size(); ++j) {
      const ProfileJet p = f(grid.theta.x[j], grid.z.x[k]);
      const double w = grid.theta.w[j] * grid.z.w[k];
      const double tr = p.ft_t + p.fz_z + p.fr;
      const double hoop = p.ft_t + p.fr;
      const double shear = p.fz_t + p.ft_z;
      q0 += w * (Lam * tr * tr + 2.0 * hoop * hoop + 2.0 * p.fz_z * p.fz_z + shear * shear);
      const double lap = p.fr_tt + p.fr_zz;
      q1 += w * (Lam * lap * lap + 2.0 * p.fr_tt * p.fr_tt + 2.0 * p.fr_zz * p.fr_zz + 4.0 * p.fr_tz * p.fr_tz);
      b += w * p.fr_z * p.fr_z;
    }
  if (!(b > 0.0)) throw DomainError("kstar: B = ||f_r,z||^2 vanishes");
  return mat.mu * (q0 + g.h * g.h / 12.0 * q1) / b;
}

FunctionalFamily functional_family(const DisplacementField& u, const Material& mat, const ShellGeometry& g,
                                   const QuadratureGrid& grid) {
  if (grid.measure != Measure::Volume) throw ConfigError("functional_family: grid measure must be Volume");
  const auto acc = integrate<4>(u, grid, [&](const CylPoint& p, const FieldJet& j) {
    const Mat3 grad = gradient(j, p.r);
    const double S = mat.energy_density(sym(grad));
    const double C = grad[0][2] * grad[0][2] + grad[1][2] * grad[1][2] + grad[2][2] * grad[2][2];
    const double S0 = mat.energy_density(sym(simplified_G(j, p.r))) / p.r;
    return Accum<4>{S, C, j.ur.z * j.ur.z, S0};
  });
  FunctionalFamily f;
  f.S = acc[0];
  f.C = acc[1];
  f.urz_sq = acc[2];
  f.S0 = acc[3];
  if (!(f.urz_sq > 0.0)) throw DomainError("functional_family: ||u_r,z||^2 vanishes, K1 undefined");
  f.K = f.C > 0.0 ? f.S / f.C : std::numeric_limits<double>::quiet_NaN();
  f.K1 = f.S / f.urz_sq;
  f.K0 = f.S0 / f.urz_sq;
  if (const MidSurfaceProfile* p = u.profile()) {
    QuadratureGrid surf = grid;
    surf.measure = Measure::Surface;
    f.Kstar = kstar(*p, mat, g, surf);
  }
  return f;
}

DisplacementField linearize_radial(const DisplacementField& u, const ShellGeometry& g, int nr) {
  if (u.order() < 2) throw CapabilityError("linearize_radial: field lacks second (theta, z) partials of u_r");
  const Rule1D rule = gauss_legendre(nr, g.r_inner(), g.r_outer());
  const double h = g.h;
  MidSurfaceProfile f = [u, rule, h](double theta, double z) {
    ProfileJet q;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const FieldJet j = u({rule.x[i], theta, z});
      const double w = rule.w[i] / h;
      q.fr += w * j.ur.v;
      q.fr_t += w * j.ur.t;
      q.fr_z += w * j.ur.z;
      q.fr_tt += w * j.ur_tt;
      q.fr_tz += w * j.ur_tz;
      q.fr_zz += w * j.ur_zz;
    }
    const FieldJet mid = u({1.0, theta, z});
    q.ft = mid.ut.v;
    q.ft_t = mid.ut.t;
    q.ft_z = mid.ut.z;
    q.fz = mid.uz.v;
    q.fz_t = mid.uz.t;
    q.fz_z = mid.uz.z;
    return q;
  };
  return lift_profile(std::move(f), u.bc());
}

BcReport verify_bc(const DisplacementField& u, const ShellGeometry& g) { return verify_bc(u, g, u.bc()); }

BcReport verify_bc(const DisplacementField& u, const ShellGeometry& g, BcTag tag) {
  BcReport rep;
  if (tag == BcTag::None) return rep;
  constexpr int kSamples = 64;
  double scale = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const double r = g.r_inner() + g.h * (s + 0.5) / kSamples;
    const double t = 2.0 * std::numbers::pi * ((s * 37) % kSamples + 0.25) / kSamples;
    for (double z : {0.0, g.L}) {
      const FieldJet j = u({r, t, z});
      double v = std::max(std::abs(j.ur.v), std::abs(j.ut.v));
      if (tag == BcTag::FixedBottom && z == 0.0) v = std::max(v, std::abs(j.uz.v));
      rep.max_violation = std::max(rep.max_violation, v);
    }
    const FieldJet mid = u({r, t, 0.5 * g.L});
    scale = std::max({scale, std::abs(mid.ur.v), std::abs(mid.ut.v), std::abs(mid.uz.v)});
  }
  if (tag == BcTag::AverageTop) {
    const Rule1D rr = gauss_legendre(8, g.r_inner(), g.r_outer());
    const Rule1D tt = periodic_trapezoid(256, 0.0, 2.0 * std::numbers::pi);
    double mean = 0.0;
    for (std::size_t i = 0; i < rr.size(); ++i)
      for (std::size_t j = 0; j < tt.size(); ++j) mean += rr.w[i] * tt.w[j] * u({rr.x[i], tt.x[j], 0.0}).uz.v;
    rep.bottom_mean_uz = mean / (2.0 * std::numbers::pi * g.h);
  }
  const double tol = 1e-10 * std::max(1.0, scale);
  rep.ok = rep.max_violation <= tol && std::abs(rep.bottom_mean_uz) <= tol;
  return rep;
}

}  // namespace shellbuckle
