#include "shellbuckle/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "shellbuckle/error.hpp"

namespace shellbuckle {

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double wt = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = mid - half * x;
    rule.x[n - 1 - i] = mid + half * x;
    rule.w[i] = rule.w[n - 1 - i] = half * wt;
  }
  return rule;
}

Rule1D composite_gauss(int panels, int per_panel, double a, double b) {
  if (panels < 1) throw DomainError("composite_gauss: panels must be >= 1");
  Rule1D out;
  const double dx = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const Rule1D r = gauss_legendre(per_panel, a + p * dx, a + (p + 1) * dx);
    out.x.insert(out.x.end(), r.x.begin(), r.x.end());
    out.w.insert(out.w.end(), r.w.begin(), r.w.end());
  }
  return out;
}

Rule1D periodic_trapezoid(int n, double a, double period) {
  if (n < 1) throw DomainError("periodic_trapezoid: n must be >= 1");
  Rule1D r;
  r.x.resize(n);
  r.w.assign(n, period / n);
  for (int i = 0; i < n; ++i) r.x[i] = a + period * i / n;
  return r;
}

}  // namespace shellbuckle
