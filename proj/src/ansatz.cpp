#include "shellbuckle/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shellbuckle/error.hpp"
#include "shellbuckle/parallel.hpp"

namespace shellbuckle {

double Poly::operator()(double x) const {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

Poly Poly::derivative(int k) const {
  Poly p = *this;
  for (int s = 0; s < k; ++s) {
    if (p.c.size() <= 1) return Poly{{0.0}};
    Poly d;
    d.c.resize(p.c.size() - 1);
    for (std::size_t i = 1; i < p.c.size(); ++i) d.c[i - 1] = static_cast<double>(i) * p.c[i];
    p = std::move(d);
  }
  return p;
}

Poly Poly::operator*(const Poly& o) const {
  Poly p;
  p.c.assign(c.size() + o.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) p.c[i + j] += c[i] * o.c[j];
  return p;
}

double Poly::integral(double a, double b) const {
  double fa = 0.0, fb = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    const double k = c[i] / static_cast<double>(i + 1);
    fa = fa * a + k;
    fb = fb * b + k;
  }
  return fb * b - fa * a;
}

namespace {

Poly power(const Poly& p, int k) {
  Poly out{{1.0}};
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

constexpr int kMaxDeriv = 6;

}  // namespace

BumpProfile::BumpProfile(double eta0, double L, double kappa, double amplitude)
    : eta0_(eta0), L_(L), kappa_(kappa), amplitude_(amplitude) {
  if (!(eta0 > 0.0 && eta0 < std::numbers::pi)) throw DomainError("bump: eta0 must lie in (0, pi)");
  if (!(L > 0.0)) throw DomainError("bump: L must be positive");
  if (!std::isfinite(kappa) || !std::isfinite(amplitude)) throw DomainError("bump: non-finite parameter");
  const Poly p = power(Poly{{1.0, 0.0, -1.0 / (eta0 * eta0)}}, 5);
  const Poly q = power(Poly{{0.0, 1.0 / L, -1.0 / (L * L)}}, 5);
  for (int k = 0; k <= kMaxDeriv; ++k) {
    P_.push_back(p.derivative(k));
    Q_.push_back(q.derivative(k));
  }
}

double BumpProfile::eta_extent() const { return eta0_ + std::abs(kappa_) * L_ / 2.0; }

double BumpProfile::d(int a, int b, double eta, double z) const {
  if (a < 0 || b < 0 || a + b > kMaxDeriv) throw ConfigError("bump: derivative order out of range");
  const double xi = eta - kappa_ * (z - L_ / 2.0);
  if (std::abs(xi) >= eta0_ || z < 0.0 || z > L_) return 0.0;
  double v = 0.0, kp = 1.0;
  for (int j = 0; j <= b; ++j, kp *= -kappa_) v += binom(b, j) * kp * P_[a + j](xi) * Q_[b - j](z);
  return amplitude_ * v;
}

std::array<std::array<double, 3>, 5> BumpProfile::jet(double eta, double z) const {
  std::array<std::array<double, 3>, 5> out{};
  const double xi = eta - kappa_ * (z - L_ / 2.0);
  if (std::abs(xi) >= eta0_ || z < 0.0 || z > L_) return out;
  std::array<double, kMaxDeriv + 1> pv{};
  std::array<double, 3> qv{};
  for (int k = 0; k <= kMaxDeriv; ++k) pv[k] = P_[k](xi);
  for (int k = 0; k < 3; ++k) qv[k] = Q_[k](z);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 3; ++b) {
      double v = 0.0, kp = 1.0;
      for (int j = 0; j <= b; ++j, kp *= -kappa_) v += binom(b, j) * kp * pv[a + j] * qv[b - j];
      out[a][b] = amplitude_ * v;
    }
  return out;
}

double BumpProfile::norm_sq(int a, int b) const {
  if (a < 0 || b < 0 || a + b > kMaxDeriv) throw ConfigError("bump: derivative order out of range");
  // unit-Jacobian shear xi = eta - kappa (z - L/2) separates the integral
  double s = 0.0;
  double kj = 1.0;
  for (int j = 0; j <= b; ++j, kj *= -kappa_) {
    double kk = 1.0;
    for (int k = 0; k <= b; ++k, kk *= -kappa_) {
      const double ip = (P_[a + j] * P_[a + k]).integral(-eta0_, eta0_);
      const double iq = (Q_[b - j] * Q_[b - k]).integral(0.0, L_);
      s += binom(b, j) * binom(b, k) * kj * kk * ip * iq;
    }
  }
  return amplitude_ * amplitude_ * s;
}

int ansatz_wavenumber(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("ansatz: h must lie in (0, 1)");
  return static_cast<int>(std::floor(std::pow(h, -0.25) * (1.0 + 1e-12)));
}

AnsatzField build_ansatz(double h, const BumpProfile& bump, const ShellGeometry& g) {
  if (std::abs(bump.L() - g.L) > 1e-12 * g.L) throw ConfigError("ansatz: bump length differs from shell length");
  AnsatzField a;
  a.h = h;
  a.n_h = ansatz_wavenumber(h);
  a.theta_half_width = bump.eta_extent() / a.n_h;
  if (a.theta_half_width >= std::numbers::pi)
    throw DomainError("ansatz: compressed support does not fit one period; reduce eta0 or kappa");
  const double n = a.n_h;
  MidSurfaceProfile f = [bump, n](double theta, double z) {
    const auto d = bump.jet(n * theta, z);
    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n;
    ProfileJet q;
    q.fr = -n2 * d[2][0];
    q.fr_t = -n3 * d[3][0];
    q.fr_z = -n2 * d[2][1];
    q.fr_tt = -n4 * d[4][0];
    q.fr_tz = -n3 * d[3][1];
    q.fr_zz = -n2 * d[2][2];
    q.ft = n * d[1][0];
    q.ft_t = n2 * d[2][0];
    q.ft_z = n * d[1][1];
    q.fz = -d[0][1];
    q.fz_t = -n * d[1][1];
    q.fz_z = -d[0][2];
    return q;
  };
  a.field = lift_profile(std::move(f), BcTag::FixedBottom);
  return a;
}

QuadratureGrid ansatz_grid(const AnsatzField& a, const ShellGeometry& g, int refine) {
  if (refine < 1) throw ConfigError("ansatz_grid: refine must be >= 1");
  QuadratureGrid grid;
  grid.measure = Measure::Volume;
  grid.r = gauss_legendre(6, g.r_inner(), g.r_outer());
  grid.theta = composite_gauss(64 * refine, 8, -a.theta_half_width, a.theta_half_width);
  grid.z = composite_gauss(32 * refine, 8, 0.0, g.L);
  return grid;
}

const ScalingQuantity& ScalingReport::at(const std::string& name) const {
  for (const auto& q : quantities)
    if (q.name == name) return q;
  throw ConfigError("scaling report: no quantity named " + name);
}

namespace {

void require_h_list(const std::vector<double>& h_list) {
  if (h_list.empty()) throw ConfigError("ansatz: empty h list");
  for (double h : h_list)
    if (!(h > 0.0 && h < 1.0)) throw DomainError("ansatz: h must lie in (0, 1)");
}

// (grad, strain, rt+tr, zr+rz, tz+zt, tt+zz, ur^2)
using AnsatzNorms = Accum<7>;

AnsatzNorms ansatz_norms(const AnsatzField& a, const ShellGeometry& g) {
  return integrate<7>(a.field, ansatz_grid(a, g), [](const CylPoint& p, const FieldJet& j) {
    const Mat3 G = gradient(j, p.r);
    const auto sq = [&](int i, int k) { return G[i][k] * G[i][k]; };
    return AnsatzNorms{frob_sq(G), frob_sq(sym(G)), sq(1, 0) + sq(0, 1), sq(2, 0) + sq(0, 2),
                       sq(1, 2) + sq(2, 1), sq(1, 1) + sq(2, 2), j.ur.v * j.ur.v};
  });
}

std::vector<AnsatzNorms> sweep_norms(const BumpProfile& bump, const std::vector<double>& h_list,
                                     const ShellGeometry& g, int jobs) {
  std::vector<AnsatzNorms> out(h_list.size());
  parallel_for(h_list.size(), jobs, [&](std::size_t i) {
    const ShellGeometry gi = make_geometry(h_list[i], g.L);
    out[i] = ansatz_norms(build_ansatz(h_list[i], bump, gi), gi);
  });
  return out;
}

void fit_quantity(ScalingQuantity& q) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : q.rows)
    if (r.value > 0.0) pts.emplace_back(r.h, r.value);
  if (pts.size() >= 4) q.fit = fit_exponent(pts);
}

}  // namespace

ScalingReport verify_limits(const BumpProfile& bump, const std::vector<double>& h_list, const ShellGeometry& g,
                            int jobs) {
  require_h_list(h_list);
  for (double h : h_list) {
    const double n = std::pow(h, -0.25);
    if (std::abs(n - std::round(n)) > 1e-9 * n)
      throw ConfigError("verify_limits: every h must be an exact n^-4 so that n_h = h^-1/4");
  }
  const double ge = bump.norm_sq(3, 0);
  const double strain_limit = bump.norm_sq(0, 2) + bump.norm_sq(4, 0) / 12.0;
  const auto norms = sweep_norms(bump, h_list, g, jobs);
  ScalingQuantity grad{"grad", -0.25, ge, {}, {}, {}};
  ScalingQuantity gradc{"grad_corrected", -0.25, 2.0 * ge, {}, {}, {}};
  ScalingQuantity strain{"strain", 1.25, strain_limit, {}, {}, {}};
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    const double h = h_list[i];
    const double gn = std::pow(h, 0.25) * norms[i][0];
    const double sn = std::pow(h, -1.25) * norms[i][1];
    grad.rows.push_back({h, norms[i][0], gn, gn / *grad.limit - 1.0});
    gradc.rows.push_back({h, norms[i][0], gn, gn / *gradc.limit - 1.0});
    strain.rows.push_back({h, norms[i][1], sn, sn / *strain.limit - 1.0});
  }
  for (auto* q : {&grad, &gradc, &strain}) fit_quantity(*q);
  return {{grad, gradc, strain}};
}

ScalingReport component_scalings(const BumpProfile& bump, const std::vector<double>& h_list, const ShellGeometry& g,
                                 int jobs) {
  require_h_list(h_list);
  const auto norms = sweep_norms(bump, h_list, g, jobs);
  struct Spec {
    const char* name;
    int slot;
    double exponent;
  };
  const Spec specs[] = {{"rt+tr", 2, -0.25}, {"zr+rz", 3, 0.25}, {"tz+zt", 4, 0.75}, {"tt+zz", 5, 1.25},
                        {"ur", 6, 0.25}};
  ScalingReport rep;
  for (const Spec& s : specs) {
    ScalingQuantity q;
    q.name = s.name;
    q.predicted_exponent = s.exponent;
    for (std::size_t i = 0; i < h_list.size(); ++i) {
      const double v = norms[i][s.slot];
      q.rows.push_back({h_list[i], v, v / std::pow(h_list[i], s.exponent), 0.0});
    }
    fit_quantity(q);
    rep.quantities.push_back(std::move(q));
  }
  return rep;
}

double predicted_compressiveness_exponent(const StressWeight& stress) {
  if (std::holds_alternative<PerfectStress>(stress.kind())) return 1.0;
  if (std::holds_alternative<ShearImperfection>(stress.kind())) return 1.25;
  return 1.5;
}

ScalingReport compressiveness_scaling(const BumpProfile& bump, const std::vector<double>& h_list,
                                      const ShellGeometry& g, const Material& mat, const StressWeight& stress,
                                      int jobs) {
  require_h_list(h_list);
  std::vector<FunctionalValue> vals(h_list.size());
  parallel_for(h_list.size(), jobs, [&](std::size_t i) {
    const ShellGeometry gi = make_geometry(h_list[i], g.L);
    const AnsatzField a = build_ansatz(h_list[i], bump, gi);
    vals[i] = functionals(a.field, stress, mat, ansatz_grid(a, gi));
  });
  ScalingQuantity q;
  q.name = "ratio";
  q.predicted_exponent = predicted_compressiveness_exponent(stress);
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (!(vals[i].C > 0.0)) {
      q.excluded_h.push_back(h_list[i]);
      continue;
    }
    const double v = vals[i].S / vals[i].C;
    q.rows.push_back({h_list[i], v, v / std::pow(h_list[i], q.predicted_exponent), 0.0});
  }
  fit_quantity(q);
  return {{q}};
}

}  // namespace shellbuckle
