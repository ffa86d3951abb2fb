#include "shellbuckle/koiter.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "shellbuckle/error.hpp"
#include "shellbuckle/parallel.hpp"

namespace shellbuckle {

WaveNumbers wave_numbers(int m, int n, double L) {
  if (m < 0 || n < 0) throw DomainError("wave_numbers: m and n must be nonnegative");
  return {m, n, std::numbers::pi * m / L};
}

ReducedForms reduced_forms(const WaveNumbers& wn, const ModeAmplitudes& a, double Lambda) {
  const cplx in(0.0, static_cast<double>(wn.n));
  const double mh = wn.m_hat, n2 = double(wn.n) * wn.n, m2 = mh * mh;
  ReducedForms f;
  f.Q0 = Lambda * std::norm(in * a.ft - mh * a.fz + a.fr) + 2.0 * std::norm(in * a.ft + a.fr) +
         2.0 * m2 * std::norm(a.fz) + std::norm(in * a.fz + mh * a.ft);
  f.Q1 = Lambda * std::norm((m2 + n2) * a.fr + in * a.ft) + 2.0 * std::norm(n2 * a.fr + in * a.ft) +
         2.0 * m2 * m2 * std::norm(a.fr) + m2 * std::norm(a.ft - 2.0 * in * a.fr);
  f.Q1star = (Lambda + 2.0) * (m2 + n2) * (m2 + n2) * std::norm(a.fr);
  f.B = m2 * std::norm(a.fr);
  return f;
}

std::pair<cplx, cplx> optimal_tangential(cplx fr, const WaveNumbers& wn, double Lambda) {
  const double mh = wn.m_hat, n = wn.n, m2 = mh * mh, n2 = n * n;
  const double D = (Lambda + 2.0) * (n2 + m2) * (n2 + m2);
  if (D == 0.0) throw DomainError("optimal_tangential: (m, n) = (0, 0) has no tangential minimizer");
  const cplx ft = cplx(0.0, n) * fr * ((3.0 * Lambda + 4.0) * m2 + (Lambda + 2.0) * n2) / D;
  const cplx fz = mh * fr * (Lambda * m2 - (Lambda + 2.0) * n2) / D;
  return {ft, fz};
}

double lambda_star(const ShellGeometry& g, const Material& mat, double m_hat, double n) {
  if (m_hat == 0.0) throw DomainError("lambda_star: m = 0 makes B vanish");
  const double Lam = mat.Lambda, m2 = m_hat * m_hat, D = n * n + m2;
  const double membrane = 4.0 * m2 * (Lam + 1.0) / ((Lam + 2.0) * D * D);
  const double bending = g.h * g.h * (Lam + 2.0) * D * D / (12.0 * m2);
  return mat.mu * (membrane + bending);
}

double lambda_star(const ShellGeometry& g, const Material& mat, const WaveNumbers& wn) {
  return lambda_star(g, mat, wn.m_hat, wn.n);
}

double classical_load(const ShellGeometry& g, const Material& mat) {
  return 2.0 * mat.mu * g.h * std::sqrt((mat.Lambda + 1.0) / 3.0);
}

double circle_residual(const ShellGeometry& g, double Lambda, double m_hat, double n) {
  const double D = n * n + m_hat * m_hat;
  const double rhs = 4.0 * m_hat * m_hat * std::sqrt(3.0 * (Lambda + 1.0));
  return std::abs(g.h * (Lambda + 2.0) * D * D - rhs) / rhs;
}

namespace {
double circle_scale(const ShellGeometry& g, double Lambda) {
  return std::pow(3.0 * (Lambda + 1.0), 0.25) / std::sqrt(g.h * (Lambda + 2.0));
}
}  // namespace

int max_wavenumber(const ShellGeometry& g, double Lambda) {
  return static_cast<int>(std::floor(2.0 * g.L / std::numbers::pi * circle_scale(g, Lambda)));
}

double koiter_circle_n_real(int m, const ShellGeometry& g, double Lambda) {
  if (m < 1) throw DomainError("koiter_circle_n: m must be >= 1");
  const double mh = std::numbers::pi * m / g.L;
  const double radicand = 2.0 * mh * circle_scale(g, Lambda) - mh * mh;
  if (radicand < 0.0)
    throw DomainError("koiter_circle_n: m = " + std::to_string(m) + " lies outside the Koiter circle (m > M(h) = " +
                      std::to_string(max_wavenumber(g, Lambda)) + ")");
  return std::sqrt(radicand);
}

int koiter_circle_n(int m, const ShellGeometry& g, double Lambda) {
  return static_cast<int>(std::floor(koiter_circle_n_real(m, g, Lambda)));
}

KoiterResult minimize_load(const ShellGeometry& g, const Material& mat, SearchBounds bounds, int jobs) {
  const double Lam = mat.Lambda;
  const int M = max_wavenumber(g, Lam);
  if (M < 1 && bounds.m_max == 0) throw DomainError("minimize_load: h too large, M(h) < 1");
  KoiterResult res;
  res.m_max = bounds.m_max > 0 ? bounds.m_max : 2 * M;
  res.n_max = bounds.n_max > 0
                  ? bounds.n_max
                  : static_cast<int>(std::ceil(2.0 * std::pow(4.0 * std::sqrt(3.0 * (Lam + 1.0)) / (g.h * (Lam + 2.0)), 0.25) *
                                               std::sqrt(static_cast<double>(res.m_max))));
  if (res.m_max < 1 || res.n_max < 0) throw ConfigError("minimize_load: empty search window");

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    int n = 0;
  };
  std::vector<Best> per_m(res.m_max);
  parallel_for(per_m.size(), jobs, [&](std::size_t i) {
    const int m = static_cast<int>(i) + 1;
    const double mh = std::numbers::pi * m / g.L;
    Best b;
    for (int n = 0; n <= res.n_max; ++n) {
      const double v = lambda_star(g, mat, mh, n);
      if (v < b.value) b = {v, n};
    }
    per_m[i] = b;
  });
  res.lambda_hat = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < per_m.size(); ++i)
    if (per_m[i].value < res.lambda_hat) {
      res.lambda_hat = per_m[i].value;
      res.m_star = static_cast<int>(i) + 1;
      res.n_star = per_m[i].n;
    }
  res.closed_form = classical_load(g, mat);
  res.circle_residual = circle_residual(g, Lam, std::numbers::pi * res.m_star / g.L, res.n_star);
  return res;
}

DisplacementField fourier_mode(const ModeCoefficients& c, BcTag bc) {
  const double mh = c.wn.m_hat, n = c.wn.n;
  const double A = c.A, B = c.B, C = c.C;
  MidSurfaceProfile f = [=](double t, double z) {
    const double sz = std::sin(mh * z), cz = std::cos(mh * z);
    const double sn = std::sin(n * t), cn = std::cos(n * t);
    ProfileJet q;
    q.fr = A * sz * cn;
    q.fr_t = -A * n * sz * sn;
    q.fr_z = A * mh * cz * cn;
    q.fr_tt = -A * n * n * sz * cn;
    q.fr_tz = -A * n * mh * cz * sn;
    q.fr_zz = -A * mh * mh * sz * cn;
    q.ft = B * sz * sn;
    q.ft_t = B * n * sz * cn;
    q.ft_z = B * mh * cz * sn;
    q.fz = C * cz * cn;
    q.fz_t = -C * n * cz * sn;
    q.fz_z = -C * mh * sz * cn;
    return q;
  };
  return lift_profile(std::move(f), bc);
}

ModeCoefficients optimal_mode_coefficients(int m, int n, const ShellGeometry& g, const Material& mat) {
  ModeCoefficients c;
  c.wn = wave_numbers(m, n, g.L);
  const auto [ft, fz] = optimal_tangential(1.0, c.wn, mat.Lambda);
  // Re(i b e^{int}) = -b sin(nt)
  c.A = 1.0;
  c.B = -ft.imag();
  c.C = fz.real();
  return c;
}

ModeCoefficients circle_mode_coefficients(int m, int n, const ShellGeometry& g, const Material& mat) {
  ModeCoefficients c;
  c.wn = wave_numbers(m, n, g.L);
  const double Lam = mat.Lambda, mh = c.wn.m_hat, s = std::sqrt(3.0 * (Lam + 1.0));
  c.A = 1.0;
  c.B = -g.h * n * ((3.0 * Lam + 4.0) * mh * mh + (Lam + 2.0) * n * n) / (4.0 * mh * mh * s);
  c.C = g.h * (Lam * mh * mh - (Lam + 2.0) * n * n) / (4.0 * mh * s);
  return c;
}

DisplacementField buckling_mode(int m, const ShellGeometry& g, const Material& mat) {
  const int M = max_wavenumber(g, mat.Lambda);
  if (m < 1 || m > M)
    throw DomainError("buckling_mode: m = " + std::to_string(m) + " outside [1, M(h)] = [1, " + std::to_string(M) +
                      "]");
  return fourier_mode(optimal_mode_coefficients(m, koiter_circle_n(m, g, mat.Lambda), g, mat), BcTag::AverageTop);
}

}  // namespace shellbuckle
