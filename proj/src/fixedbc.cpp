#include "shellbuckle/fixedbc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "shellbuckle/error.hpp"
#include "shellbuckle/koiter.hpp"
#include "shellbuckle/parallel.hpp"

namespace shellbuckle {

namespace {

void require_mn(int m, int n) {
  if (m < 1) throw DomainError("fixedbc: m must be >= 1");
  if (n < 1) throw DomainError("fixedbc: n must be >= 1 (division by n^2)");
}

}  // namespace

double fixedbc_gamma(int m, int n, double L, double Lambda) {
  require_mn(m, n);
  const double mh = std::numbers::pi * m / L, n2 = static_cast<double>(n) * n;
  return 1.0 / mh + Lambda * mh / ((Lambda + 2.0) * n2);
}

double fixedbc_T(int m, int n, double L, double Lambda) {
  require_mn(m, n);
  const double mh = std::numbers::pi * m / L, n2 = static_cast<double>(n) * n;
  const double s = n2 + mh * mh;
  return ((Lambda + 2.0) * n2 - Lambda * mh * mh) / ((Lambda + 2.0) * s * s);
}

std::pair<double, double> FixedBCMode::constraint_residuals() const {
  return {m * fr[0] + (m + 2) * fr[1], fz[0] + fz[1]};
}

FixedBCMode fixedbc_mode(int m, const ShellGeometry& g, const Material& mat, int n, FixedBCVariant variant) {
  if (m < 1) throw DomainError("fixedbc: m must be >= 1");
  const int M = max_wavenumber(g, mat.Lambda);
  if (m + 2 > M)
    throw DomainError("fixedbc: m + 2 = " + std::to_string(m + 2) + " exceeds M(h) = " + std::to_string(M));
  FixedBCMode md;
  md.m = m;
  md.variant = variant;
  md.n = n > 0 ? n : koiter_circle_n(m, g, mat.Lambda);
  require_mn(m, md.n);
  md.m_hat = std::numbers::pi * m / g.L;
  md.m2_hat = std::numbers::pi * (m + 2) / g.L;
  const double nn = md.n, n2 = nn * nn;
  md.fr[0] = 1.0 / md.m_hat;
  md.fr[1] = -1.0 / md.m2_hat;
  if (variant == FixedBCVariant::Simplified) {
    md.fz[0] = -1.0 / n2;
    md.fz[1] = 1.0 / n2;
    md.ft[0] = -fixedbc_gamma(m, md.n, g.L, mat.Lambda) / nn;
    md.ft[1] = fixedbc_gamma(m + 2, md.n, g.L, mat.Lambda) / nn;
  } else {
    const double T = fixedbc_T(m, md.n, g.L, mat.Lambda), Lam = mat.Lambda;
    md.fz[0] = -T;
    md.fz[1] = T;
    const double kh[2] = {md.m_hat, md.m2_hat};
    for (int i = 0; i < 2; ++i)
      md.ft[i] = -nn * ((Lam + 2.0) * md.fr[i] - (Lam + 1.0) * kh[i] * md.fz[i]) / ((Lam + 2.0) * n2 + kh[i] * kh[i]);
  }

  const double k[2] = {md.m_hat, md.m2_hat};
  const double ar[2] = {md.fr[0], md.fr[1]}, at[2] = {md.ft[0], md.ft[1]}, az[2] = {md.fz[0], md.fz[1]};
  MidSurfaceProfile f = [=](double theta, double z) {
    const double c = std::cos(nn * theta), s = std::sin(nn * theta);
    ProfileJet q;
    for (int i = 0; i < 2; ++i) {
      const double sz = std::sin(k[i] * z), cz = std::cos(k[i] * z);
      q.fr += ar[i] * sz * c;
      q.fr_t += -nn * ar[i] * sz * s;
      q.fr_z += k[i] * ar[i] * cz * c;
      q.fr_tt += -n2 * ar[i] * sz * c;
      q.fr_tz += -nn * k[i] * ar[i] * cz * s;
      q.fr_zz += -k[i] * k[i] * ar[i] * sz * c;
      q.ft += at[i] * sz * s;
      q.ft_t += nn * at[i] * sz * c;
      q.ft_z += k[i] * at[i] * cz * s;
      q.fz += az[i] * cz * c;
      q.fz_t += -nn * az[i] * cz * s;
      q.fz_z += -k[i] * az[i] * sz * c;
    }
    return q;
  };
  md.field = lift_profile(std::move(f), BcTag::FixedBottom);
  return md;
}

double fixedbc_K0(const FixedBCMode& mode, const ShellGeometry& g, const Material& mat) {
  // every integrand is a function of n theta with harmonics of order <= 2: one period, 8 nodes, times n
  QuadratureGrid grid;
  grid.measure = Measure::Volume;
  grid.r = gauss_legendre(8, g.r_inner(), g.r_outer());
  grid.theta = periodic_trapezoid(8, 0.0, 2.0 * std::numbers::pi / mode.n);
  for (double& w : grid.theta.w) w *= mode.n;
  grid.z = composite_gauss(mode.m + 4, 10, 0.0, g.L);
  return functional_family(mode.field, mat, g, grid).K0;
}

double fixedbc_limit_expression(int m) {
  if (m < 1) throw DomainError("fixedbc: m must be >= 1");
  const double q = std::pow((m + 2.0) / m, 2);
  return (2.0 + q + 1.0 / q) / 4.0;
}

int fixedbc_m(double h, double alpha, double c) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ConfigError("fixedbc: alpha must lie in (0, 1/2) so that m(h) -> inf and m(h) sqrt(h) -> 0");
  if (!(c > 0.0)) throw ConfigError("fixedbc: c must be positive");
  if (!(h > 0.0 && h < 1.0)) throw DomainError("fixedbc: h must lie in (0, 1)");
  return std::max(1, static_cast<int>(std::lround(c * std::pow(h, -alpha))));
}

std::vector<FixedBCRow> fixedbc_limit(const std::vector<double>& h_list, double alpha, double L, const Material& mat,
                                      double c, int jobs, FixedBCVariant variant) {
  if (h_list.empty()) throw ConfigError("fixedbc: empty h list");
  for (double h : h_list) fixedbc_m(h, alpha, c);
  std::vector<FixedBCRow> rows(h_list.size());
  parallel_for(h_list.size(), jobs, [&](std::size_t i) {
    const ShellGeometry g = make_geometry(h_list[i], L);
    FixedBCRow& row = rows[i];
    row.h = g.h;
    row.m = fixedbc_m(g.h, alpha, c);
    const FixedBCMode mode = fixedbc_mode(row.m, g, mat, 0, variant);
    row.n = mode.n;
    row.K0 = fixedbc_K0(mode, g, mat);
    row.ratio = row.K0 / classical_load(g, mat);
    row.limit_expression = fixedbc_limit_expression(row.m);
  });
  return rows;
}

}  // namespace shellbuckle
