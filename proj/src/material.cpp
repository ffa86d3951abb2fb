#include "shellbuckle/material.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "shellbuckle/error.hpp"

namespace shellbuckle {

double Material::energy_density(const Sym3& e) const {
  const double tr = e[0][0] + e[1][1] + e[2][2];
  double sq = 0.0;
  for (const auto& row : e)
    for (double v : row) sq += v * v;
  return lambda_lame * tr * tr + 2.0 * mu * sq;
}

Material derive_material(double E, double nu) {
  if (!(E > 0.0)) throw DomainError("derive_material: E must be positive (got E=" + std::to_string(E) + ")");
  if (!(nu > 0.0 && nu < 0.5))
    throw DomainError("derive_material: nu must lie in (0, 1/2) (got nu=" + std::to_string(nu) + ")");
  Material m;
  m.E = E;
  m.nu = nu;
  m.mu = E / (2.0 * (1.0 + nu));
  m.Lambda = 2.0 * nu / (1.0 - 2.0 * nu);
  m.lambda_lame = m.mu * m.Lambda;
  return m;
}

ShellGeometry make_geometry(double h, double L) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("geometry: h must lie in (0, 1)");
  if (!(L > 0.0)) throw DomainError("geometry: L must be positive");
  return ShellGeometry{h, L};
}

double trivial_branch_limit(const Material& mat) { return mat.E / (3.0 * std::sqrt(3.0)); }

TrivialBranch solve_trivial_branch(const Material& mat, double load) {
  const double limit = trivial_branch_limit(mat);
  if (!(load >= 0.0) || load >= limit) {
    std::ostringstream os;
    os << "no trivial branch: load " << load << " outside the admissible range [0, E/(3*sqrt(3))) = [0, " << limit
       << ")";
    throw DomainError(os.str());
  }
  const auto g = [&](double b) { return mat.E * b * (1.0 - b) * (2.0 - b) - 2.0 * load; };
  double lo = 0.0, hi = 1.0 - 1.0 / std::sqrt(3.0);
  // g is increasing on [lo, hi], g(lo) <= 0 <= g(hi)
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  TrivialBranch tb;
  tb.load = load;
  tb.b = load == 0.0 ? 0.0 : 0.5 * (lo + hi);
  tb.a = std::sqrt(1.0 + mat.nu * (2.0 * tb.b - tb.b * tb.b)) - 1.0;
  tb.residual = std::abs(g(tb.b));
  return tb;
}

StressWeight::StressWeight(Kind kind) : kind_(std::move(kind)) {}

Sym3 StressWeight::operator()(double theta, double z) const {
  Sym3 s{};
  if (std::holds_alternative<PerfectStress>(kind_)) {
    s[2][2] = 1.0;
  } else if (const auto* sh = std::get_if<ShearImperfection>(&kind_)) {
    const double sv = sh->s(theta);
    s[1][2] = s[2][1] = sv;
    s[2][2] = sh->t(theta) - z * sh->ds(theta);
  } else {
    s[1][1] = std::get<HoopImperfection>(kind_).sigma_tt(theta);
  }
  return s;
}

namespace {
void require_periodic(const ThetaFn& f, const char* name) {
  if (!f) throw DomainError(std::string("stress weight: missing function ") + name);
  const double a = f(0.0), b = f(2.0 * std::numbers::pi);
  const double scale = std::max(1.0, std::abs(a));
  if (std::abs(a - b) > 1e-10 * scale)
    throw DomainError(std::string("stress weight: function ") + name + " is not 2*pi-periodic");
}
}  // namespace

StressWeight perfect_stress() { return StressWeight(PerfectStress{}); }

StressWeight shear_imperfection(ThetaFn s, ThetaFn ds, ThetaFn t) {
  require_periodic(s, "s");
  require_periodic(ds, "s'");
  require_periodic(t, "t");
  return StressWeight(ShearImperfection{std::move(s), std::move(ds), std::move(t)});
}

StressWeight hoop_imperfection(ThetaFn sigma_tt) {
  require_periodic(sigma_tt, "sigma_theta_theta");
  return StressWeight(HoopImperfection{std::move(sigma_tt)});
}

}  // namespace shellbuckle
