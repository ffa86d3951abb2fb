#include "shellbuckle/rect_korn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "shellbuckle/error.hpp"
#include "shellbuckle/parallel.hpp"
#include "shellbuckle/quadrature.hpp"

namespace shellbuckle {

using std::numbers::pi;

Mat2 G_alpha(const PlanarJet& j, double alpha) { return {{{j.ux, j.uy}, {j.vx, j.vy + alpha * j.u}}}; }

Mat2 G_star(const PlanarJet& j) { return {{{j.ux, j.uy - j.v}, {j.vx, j.vy + j.u}}}; }

Mat2 sym(const Mat2& a) {
  const double off = 0.5 * (a[0][1] + a[1][0]);
  return {{{a[0][0], off}, {off, a[1][1]}}};
}

namespace {

double frob_sq(const Mat2& a) { return a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1]; }

void require_rect(double h, double L) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("rect_korn: h must lie in (0, 1)");
  if (!(L > 0.0)) throw DomainError("rect_korn: L must be positive");
}

void require_alpha(double alpha) {
  if (!(alpha >= -1.0 && alpha <= 1.0)) throw DomainError("rect_korn: alpha must lie in [-1, 1]");
}

void require_bc(const PlanarField& f, double h, double L, PlanarBc bc, const char* what) {
  if (planar_bc_violation(f, h, L, bc) > 1e-10)
    throw DomainError(std::string("rect_korn: ") + what + " requires the boundary condition to hold");
}

double sq(double x) { return x * x; }

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double planar_bc_violation(const PlanarField& f, double h, double L, PlanarBc bc) {
  if (bc == PlanarBc::None) return 0.0;
  constexpr int kSamples = 64;
  double worst = 0.0, scale = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const double x = h * (s + 0.5) / kSamples;
    const PlanarJet a = f(x, 0.0), b = f(x, L), mid = f(x, 0.37 * L);
    scale = std::max({scale, std::abs(mid.u), std::abs(mid.v)});
    switch (bc) {
      case PlanarBc::ZeroHorizontal:
        worst = std::max({worst, std::abs(a.u), std::abs(b.u)});
        break;
      case PlanarBc::ZeroBoth:
        worst = std::max({worst, std::abs(a.u), std::abs(b.u), std::abs(a.v), std::abs(b.v)});
        break;
      case PlanarBc::PeriodicY:
        worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.v - b.v)});
        break;
      case PlanarBc::None:
        break;
    }
  }
  return worst / std::max(1.0, scale);
}

double rect_K0() { return (std::sqrt(2.0) + 1.0 / pi) / pi; }

double rect_K1() {
  const double k = rect_K0();
  return 4.0 + 6.0 * pi * pi * k * k + 6.0 * (1.0 + pi * k) * (1.0 + (2.0 * std::sqrt(3.0) + pi) * k);
}

double rect_Ku() { return 12.0 * std::sqrt(3.0) * (1.0 + pi * rect_K0()); }

double psi(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double Phi(double tau) {
  const double t = std::abs(tau);
  if (t < 1e-2) {
    // sinh^2 t - t^2 = t^4/3 + 2 t^6/45 + t^8/315 + ...
    const double t2 = t * t;
    return 1.0 / (1.0 / 3.0 + 2.0 * t2 / 45.0 + t2 * t2 / 315.0);
  }
  const double s = std::sinh(t);
  return t * t * t * t / (s * s - t * t);
}

PlanarNorms planar_norms(const PlanarField& f, double h, double L, double alpha, bool star) {
  const Rule1D rx = gauss_legendre(12, 0.0, h);
  const Rule1D ry = composite_gauss(24, 10, 0.0, L);
  PlanarNorms n;
  for (std::size_t j = 0; j < ry.size(); ++j)
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double w = rx.w[i] * ry.w[j];
      const PlanarJet p = f(rx.x[i], ry.x[j]);
      const Mat2 G = star ? G_star(p) : G_alpha(p, alpha);
      n.G2 += w * frob_sq(G);
      n.e2 += w * frob_sq(sym(G));
      n.u2 += w * p.u * p.u;
      n.v2 += w * p.v * p.v;
    }
  return n;
}

BasicInequalityReport check_basic_inequality(const PlanarField& f, double alpha, double h, double L) {
  require_rect(h, L);
  require_alpha(alpha);
  require_bc(f, h, L, PlanarBc::ZeroHorizontal, "the basic inequality");
  const PlanarNorms n = planar_norms(f, h, L, alpha);
  const double e = std::sqrt(n.e2), u = std::sqrt(n.u2);
  BasicInequalityReport r;
  r.lhs = n.G2;
  r.rhs100 = 100.0 * e * (u / h + e);
  r.rhs99_57 = 99.0 * n.e2 + 57.0 / h * u * e;
  const double rhs = std::min(r.rhs100, r.rhs99_57);
  r.holds = r.lhs <= rhs * (1.0 + 1e-12) + 1e-300;
  r.margin = r.lhs > 0.0 ? (rhs - r.lhs) / r.lhs : std::numeric_limits<double>::infinity();
  return r;
}

namespace {

struct HarmonicNorms {
  double w2 = 0, wx2 = 0, wy2 = 0;
};

HarmonicNorms harmonic_norms(const std::function<std::array<double, 3>(double, double)>& w, double h, double L,
                             int resolution) {
  const Rule1D rx = gauss_legendre(resolution, 0.0, h);
  const Rule1D ry = composite_gauss(std::max(1, resolution / 4), resolution, 0.0, L);
  HarmonicNorms n;
  for (std::size_t j = 0; j < ry.size(); ++j)
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double q = rx.w[i] * ry.w[j];
      const auto v = w(rx.x[i], ry.x[j]);
      n.w2 += q * v[0] * v[0];
      n.wx2 += q * v[1] * v[1];
      n.wy2 += q * v[2] * v[2];
    }
  return n;
}

}  // namespace

HarmonicLemmaReport harmonic_lemma_check(double h, double L, int resolution, int trials, std::uint64_t seed) {
  require_rect(h, L);
  if (resolution < 4) throw ConfigError("harmonic_lemma_check: resolution must be >= 4");
  HarmonicLemmaReport r;
  const double k = pi / L, tau = k * h, phi = Phi(tau);

  const auto extremal = [k, h](double x, double y) {
    const double c = std::cosh(k * (x - h / 2)), s = std::sinh(k * (x - h / 2));
    return std::array<double, 3>{c * std::sin(k * y), k * s * std::sin(k * y), k * c * std::cos(k * y)};
  };
  const HarmonicNorms en = harmonic_norms(extremal, h, L, resolution);
  r.extremal_lhs = en.wy2 - en.wx2;
  r.extremal_rhs = 2.0 * std::sqrt(phi) / h * std::sqrt(en.w2 * en.wx2);
  r.equality_error = std::abs(r.extremal_lhs - r.extremal_rhs) / r.extremal_rhs;

  // closed form: ||w||^2 = (L/2)(h/2 + sinh(kh)/(2k)), ||w_x||^2 = k^2 (L/2)(sinh(kh)/(2k) - h/2)
  const double sh = std::sinh(tau) / (2.0 * k);
  const double w2 = 0.5 * L * (0.5 * h + sh), wx2 = k * k * 0.5 * L * (sh - 0.5 * h);
  const double wy2 = k * k * w2;
  const double cl = wy2 - wx2, cr = 2.0 * std::sqrt(phi) / h * std::sqrt(w2 * wx2);
  r.closed_form_error = std::abs(cl - cr) / cr;

  r.trials = trials;
  r.min_margin = std::numeric_limits<double>::infinity();
  std::normal_distribution<double> nd;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(t), 0x68696eu};
    std::mt19937_64 rng(ss);
    std::array<double, 8> A{}, B{};
    for (int n = 0; n < 8; ++n) {
      A[n] = nd(rng) * std::exp(-k * (n + 1) * h);  // keeps both exponentials O(1) on [0, h]
      B[n] = nd(rng);
    }
    const auto w = [&](double x, double y) {
      std::array<double, 3> v{};
      for (int n = 0; n < 8; ++n) {
        const double kn = k * (n + 1), ep = std::exp(kn * x), em = std::exp(-kn * x);
        const double s = std::sin(kn * y), c = std::cos(kn * y);
        v[0] += (A[n] * ep + B[n] * em) * s;
        v[1] += kn * (A[n] * ep - B[n] * em) * s;
        v[2] += kn * (A[n] * ep + B[n] * em) * c;
      }
      return v;
    };
    const HarmonicNorms n = harmonic_norms(w, h, L, resolution);
    const double root = std::sqrt(n.w2 * n.wx2);
    const double rhs_hi = 2.0 * std::sqrt(3.0) / h * root + n.wx2;
    const double rhs_shi = 2.0 * std::sqrt(phi) / h * root + n.wx2;
    const double tol = 1e-10 * rhs_hi;
    if (n.wy2 > rhs_hi + tol) ++r.violations_hi;
    if (n.wy2 > rhs_shi + tol) ++r.violations_shi;
    r.min_margin = std::min(r.min_margin, (rhs_hi - n.wy2) / rhs_hi);
  }
  return r;
}

namespace {

struct Grid2 {
  int nx, ny;
  double dx, dy;
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * (nx + 1) + i; }
};

// y = (2/dx^2 + 2/dy^2) x - neighbours, on interior nodes; boundary entries of x are ignored (treated as 0)
void apply_neg_laplacian(const Grid2& g, const std::vector<double>& x, std::vector<double>& y) {
  const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy), d = 2.0 * (ax + ay);
  std::fill(y.begin(), y.end(), 0.0);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const auto at = [&](int a, int b) {
        return (a <= 0 || a >= g.nx || b <= 0 || b >= g.ny) ? 0.0 : x[g.idx(a, b)];
      };
      y[g.idx(i, j)] = d * x[g.idx(i, j)] - ax * (at(i - 1, j) + at(i + 1, j)) - ay * (at(i, j - 1) + at(i, j + 1));
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_laplacian(const Grid2& g, const std::vector<double>& w) {
  const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy);
  double m = 0.0;
  for (int j = 1; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const double lap = ax * (w[g.idx(i - 1, j)] - 2.0 * w[g.idx(i, j)] + w[g.idx(i + 1, j)]) +
                         ay * (w[g.idx(i, j - 1)] - 2.0 * w[g.idx(i, j)] + w[g.idx(i, j + 1)]);
      m = std::max(m, std::abs(lap));
    }
  return m;
}

}  // namespace

HarmonicSolution harmonic_projection(const PlanarField& f, double h, double L, int nx, int ny, double tol,
                                     int max_iter) {
  require_rect(h, L);
  if (nx < 2 || ny < 2) throw ConfigError("harmonic_projection: need at least 2 cells per direction");
  const Grid2 g{nx, ny, h / nx, L / ny};
  const std::size_t N = static_cast<std::size_t>(nx + 1) * (ny + 1);
  HarmonicSolution s;
  s.nx = nx;
  s.ny = ny;
  s.h = h;
  s.L = L;
  s.w.assign(N, 0.0);
  std::vector<double> bnd(N, 0.0);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      if (i == 0 || i == nx || j == 0 || j == ny) bnd[g.idx(i, j)] = f(i * g.dx, j * g.dy).u;

  // right-hand side: boundary neighbours moved over
  const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy);
  std::vector<double> b(N, 0.0);
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i) {
      double v = 0.0;
      if (i == 1) v += ax * bnd[g.idx(0, j)];
      if (i == nx - 1) v += ax * bnd[g.idx(nx, j)];
      if (j == 1) v += ay * bnd[g.idx(i, 0)];
      if (j == ny - 1) v += ay * bnd[g.idx(i, ny)];
      b[g.idx(i, j)] = v;
    }

  std::vector<double> x(N, 0.0), r = b, p = r, Ap(N, 0.0);
  const double bnorm = std::sqrt(dot(b, b));
  double rr = dot(r, r);
  int it = 0;
  if (bnorm > 0.0) {
    for (; it < max_iter && std::sqrt(rr) > tol * bnorm; ++it) {
      apply_neg_laplacian(g, p, Ap);
      const double alpha = rr / dot(p, Ap);
      for (std::size_t q = 0; q < N; ++q) {
        x[q] += alpha * p[q];
        r[q] -= alpha * Ap[q];
      }
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t q = 0; q < N; ++q) p[q] = r[q] + beta * p[q];
    }
    if (std::sqrt(rr) > tol * bnorm)
      throw SolverError("harmonic_projection: CG did not converge in " + std::to_string(max_iter) +
                        " iterations, relative residual " + std::to_string(std::sqrt(rr) / bnorm));
  }
  for (std::size_t q = 0; q < N; ++q) s.w[q] = x[q] + bnd[q];
  s.iterations = it;
  double wmax = 0.0;
  for (double v : s.w) wmax = std::max(wmax, std::abs(v));
  const double hmin = std::min(g.dx, g.dy);
  s.residual = wmax > 0.0 ? max_laplacian(g, s.w) * hmin * hmin / wmax : 0.0;
  return s;
}

double laplacian_truncation(const std::function<double(double, double)>& fn, double h, double L, int nx, int ny) {
  const Grid2 g{nx, ny, h / nx, L / ny};
  std::vector<double> w(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) w[g.idx(i, j)] = fn(i * g.dx, j * g.dy);
  return max_laplacian(g, w);
}

MainEstimateReport main_estimate_check(const PlanarField& f, double alpha, double h, double L, int nx, int ny) {
  require_rect(h, L);
  require_alpha(alpha);
  require_bc(f, h, L, PlanarBc::ZeroBoth, "the projection estimate");
  const HarmonicSolution s = harmonic_projection(f, h, L, nx, ny);
  const Grid2 g{nx, ny, h / nx, L / ny};
  std::vector<double> d(s.w.size());
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) d[g.idx(i, j)] = f(i * g.dx, j * g.dy).u - s.at(i, j);
  // energy of the 5-point stencil (edge differences, trapezoid weights across the edge direction)
  double grad2 = 0.0, u2 = 0.0;
  const auto tw = [](int k, int n) { return (k == 0 || k == n) ? 0.5 : 1.0; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i) grad2 += tw(j, ny) * g.dy * sq(d[g.idx(i + 1, j)] - d[g.idx(i, j)]) / g.dx;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i) grad2 += tw(i, nx) * g.dx * sq(d[g.idx(i, j + 1)] - d[g.idx(i, j)]) / g.dy;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) u2 += tw(i, nx) * tw(j, ny) * g.dx * g.dy * sq(d[g.idx(i, j)]);

  MainEstimateReport r;
  r.grad_diff = std::sqrt(grad2);
  r.u_diff = std::sqrt(u2);
  r.e_norm = std::sqrt(planar_norms(f, h, L, alpha).e2);
  const double c = std::sqrt(2.0) + 1.0 / pi;
  r.grad_bound = c * r.e_norm;
  r.u_bound = h / pi * c * r.e_norm;
  r.grad_ratio = r.grad_bound > 0.0 ? r.grad_diff / r.grad_bound : (r.grad_diff > 0.0 ? kInf : 0.0);
  r.u_ratio = r.u_bound > 0.0 ? r.u_diff / r.u_bound : (r.u_diff > 0.0 ? kInf : 0.0);
  r.holds = r.grad_ratio <= 1.05 && r.u_ratio <= 1.05;
  r.residual = s.residual;
  r.iterations = s.iterations;
  return r;
}

PeriodicReport check_periodic_inequalities(const PlanarField& f, double alpha, double h, double C0, double sigma) {
  require_alpha(alpha);
  if (!(h > 0.0 && h < sigma)) throw DomainError("periodic inequalities: h must lie in (0, sigma)");
  const double L = 2.0 * pi;
  require_bc(f, h, L, PlanarBc::PeriodicY, "the periodic inequalities");
  const PlanarNorms a = planar_norms(f, h, L, alpha, false);
  const PlanarNorms s = planar_norms(f, h, L, 0.0, true);
  const double ea = std::sqrt(a.e2), es = std::sqrt(s.e2), u = std::sqrt(a.u2);
  const double da = ea * (u / h + ea);
  const double ds = s.e2 + es * u / h + s.v2;
  PeriodicReport r;
  r.ratio_alpha = da > 0.0 ? a.G2 / da : (a.G2 > 0.0 ? kInf : 0.0);
  r.ratio_star = ds > 0.0 ? s.G2 / ds : (s.G2 > 0.0 ? kInf : 0.0);
  r.holds = r.ratio_alpha <= C0 && r.ratio_star <= C0;
  return r;
}

namespace {

// Sum_{j<=3} Sum_k c_jk X^j b_k(y) with X = x/h and b_k a sine, cosine or polynomial basis.
struct Series {
  enum class Basis { Sin, Cos, Poly };
  Basis basis = Basis::Sin;
  double omega = 1.0;  // frequency unit (Sin/Cos) or 1/L (Poly)
  double h = 1.0;
  int k0 = 0, k1 = 0;
  std::vector<std::array<double, 4>> c;  // c[k - k0][j]
  double weight_omega = 0.0;             // optional sin(weight_omega y) factor (0: none)

  std::array<double, 3> operator()(double x, double y) const {
    const double X = x / h;
    double f = 0.0, fx = 0.0, fy = 0.0;
    for (int k = k0; k <= k1; ++k) {
      const auto& cj = c[k - k0];
      const double p = cj[0] + X * (cj[1] + X * (cj[2] + X * cj[3]));
      const double dp = (cj[1] + X * (2.0 * cj[2] + X * 3.0 * cj[3])) / h;
      double b, db;
      switch (basis) {
        case Basis::Sin:
          b = std::sin(k * omega * y), db = k * omega * std::cos(k * omega * y);
          break;
        case Basis::Cos:
          b = std::cos(k * omega * y), db = -k * omega * std::sin(k * omega * y);
          break;
        default: {
          const double Y = y * omega;
          b = std::pow(Y, k), db = k == 0 ? 0.0 : k * std::pow(Y, k - 1) * omega;
        }
      }
      f += p * b;
      fx += dp * b;
      fy += p * db;
    }
    if (weight_omega != 0.0) {
      const double s = std::sin(weight_omega * y), ds = weight_omega * std::cos(weight_omega * y);
      return {s * f, s * fx, ds * f + s * fy};
    }
    return {f, fx, fy};
  }
};

Series random_series(std::mt19937_64& rng, Series::Basis basis, double omega, double h, int k0, int k1) {
  std::normal_distribution<double> nd;
  Series s;
  s.basis = basis;
  s.omega = omega;
  s.h = h;
  s.k0 = k0;
  s.k1 = k1;
  for (int k = k0; k <= k1; ++k) {
    // coefficient decay keeps high modes present but not dominant
    const double decay = 1.0 / (1.0 + 0.25 * k * k);
    s.c.push_back({nd(rng) * decay, nd(rng) * decay, nd(rng) * decay, nd(rng) * decay});
  }
  return s;
}

PlanarField combine(Series u, Series v, double u_scale, PlanarBc bc) {
  PlanarField f;
  f.bc = bc;
  f.eval = [u = std::move(u), v = std::move(v), u_scale](double x, double y) {
    const auto a = u(x, y), b = v(x, y);
    return PlanarJet{u_scale * a[0], u_scale * a[1], u_scale * a[2], b[0], b[1], b[2]};
  };
  return f;
}

// relative size of u against v: 10^U(-2, 0) exercises both the ||u||/h and ||e||^2 regimes
double random_u_scale(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(-2.0, 0.0);
  return std::pow(10.0, ud(rng));
}

}  // namespace

PlanarField random_zero_horizontal_field(std::mt19937_64& rng, double h, double L) {
  const double scale = random_u_scale(rng);
  std::bernoulli_distribution coin(0.5);
  if (coin(rng)) {
    // sin(pi y / L) times a polynomial, v an unconstrained polynomial
    Series u = random_series(rng, Series::Basis::Poly, 1.0 / L, h, 0, 3);
    u.weight_omega = pi / L;
    Series v = random_series(rng, Series::Basis::Poly, 1.0 / L, h, 0, 3);
    return combine(std::move(u), std::move(v), scale, PlanarBc::ZeroHorizontal);
  }
  Series u = random_series(rng, Series::Basis::Sin, pi / L, h, 1, 8);
  Series v = random_series(rng, Series::Basis::Cos, pi / L, h, 0, 8);
  return combine(std::move(u), std::move(v), scale, PlanarBc::ZeroHorizontal);
}

PlanarField random_zero_both_field(std::mt19937_64& rng, double h, double L) {
  const double scale = random_u_scale(rng);
  Series u = random_series(rng, Series::Basis::Sin, pi / L, h, 1, 8);
  Series v = random_series(rng, Series::Basis::Sin, pi / L, h, 1, 8);
  return combine(std::move(u), std::move(v), scale, PlanarBc::ZeroBoth);
}

PlanarField random_periodic_field(std::mt19937_64& rng, double h) {
  const double scale = random_u_scale(rng);
  Series us = random_series(rng, Series::Basis::Sin, 1.0, h, 1, 8);
  Series uc = random_series(rng, Series::Basis::Cos, 1.0, h, 0, 8);
  Series vs = random_series(rng, Series::Basis::Sin, 1.0, h, 1, 8);
  Series vc = random_series(rng, Series::Basis::Cos, 1.0, h, 0, 8);
  PlanarField f;
  f.bc = PlanarBc::PeriodicY;
  f.eval = [=](double x, double y) {
    const auto a = us(x, y), b = uc(x, y), c = vs(x, y), d = vc(x, y);
    return PlanarJet{scale * (a[0] + b[0]), scale * (a[1] + b[1]), scale * (a[2] + b[2]),
                     c[0] + d[0],           c[1] + d[1],           c[2] + d[2]};
  };
  return f;
}

RectKornSuite run_rect_korn(double h, double L, int trials, std::uint64_t seed, int jobs, int mainest_fields) {
  require_rect(h, L);
  if (trials < 0) throw ConfigError("rect_korn: trials must be >= 0");
  RectKornSuite out;
  out.trials = trials;
  const double hp = std::min(h, 0.5 * kPeriodicSigma);

  struct Trial {
    BasicInequalityReport basic;
    PeriodicReport periodic;
    std::optional<MainEstimateReport> main;
  };
  std::vector<Trial> res(static_cast<std::size_t>(trials));
  parallel_for(res.size(), jobs, [&](std::size_t t) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(ss);
    std::uniform_real_distribution<double> ad(-1.0, 1.0);
    const double alpha = ad(rng);
    res[t].basic = check_basic_inequality(random_zero_horizontal_field(rng, h, L), alpha, h, L);
    res[t].periodic = check_periodic_inequalities(random_periodic_field(rng, hp), alpha, hp);
    if (static_cast<int>(t) < mainest_fields) {
      const int nx = 32, ny = std::max(32, static_cast<int>(std::lround(nx * L / h / 4.0)));
      res[t].main = main_estimate_check(random_zero_both_field(rng, h, L), alpha, h, L, nx, std::min(ny, 2048));
    }
  });

  out.min_margin_basic = std::numeric_limits<double>::infinity();
  for (const Trial& t : res) {
    if (!t.basic.holds) ++out.violations_basic;
    out.min_margin_basic = std::min(out.min_margin_basic, t.basic.margin);
    if (!t.periodic.holds) ++out.violations_periodic;
    out.max_ratio_periodic_alpha = std::max(out.max_ratio_periodic_alpha, t.periodic.ratio_alpha);
    out.max_ratio_periodic_star = std::max(out.max_ratio_periodic_star, t.periodic.ratio_star);
    if (t.main) {
      ++out.mainest_fields;
      if (!t.main->holds) ++out.violations_mainest;
      out.max_mainest_grad_ratio = std::max(out.max_mainest_grad_ratio, t.main->grad_ratio);
      out.max_mainest_u_ratio = std::max(out.max_mainest_u_ratio, t.main->u_ratio);
    }
  }
  const HarmonicLemmaReport hl = harmonic_lemma_check(h, L, 32, trials, seed);
  out.violations_hi = hl.violations_hi;
  out.min_margin_hi = hl.min_margin;
  out.extremal_equality_error = std::max(hl.equality_error, hl.closed_form_error);
  return out;
}

}  // namespace shellbuckle
