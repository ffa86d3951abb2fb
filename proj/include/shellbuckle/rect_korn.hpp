/** @file rect_korn.hpp
 *  @brief Korn-type inequalities on the thin rectangle [0,h] x [0,L]: modified gradients, the explicit
 *  constant bounds, the harmonic lemma with its extremal, and a finite-difference harmonic projection.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace shellbuckle {

struct PlanarJet {
  double u = 0, ux = 0, uy = 0;
  double v = 0, vx = 0, vy = 0;
};

enum class PlanarBc { None, ZeroHorizontal, ZeroBoth, PeriodicY };

/// (u, v) on [0,h] x [0,L] with first partials.
struct PlanarField {
  std::function<PlanarJet(double x, double y)> eval;
  PlanarBc bc = PlanarBc::None;

  PlanarJet operator()(double x, double y) const { return eval(x, y); }
};

using Mat2 = std::array<std::array<double, 2>, 2>;

/// [[u_x, u_y], [v_x, v_y + alpha u]]
Mat2 G_alpha(const PlanarJet& j, double alpha);
/// [[u_x, u_y - v], [v_x, v_y + u]]
Mat2 G_star(const PlanarJet& j);
Mat2 sym(const Mat2& a);

/// Largest boundary violation of the tag on 64 samples per edge.
double planar_bc_violation(const PlanarField& f, double h, double L, PlanarBc bc);

// Constants of the zero-boundary theorem.
double rect_K0();   // (sqrt 2 + 1/pi) / pi
double rect_K1();   // 4 + 6 pi^2 K0^2 + 6 (1 + pi K0)(1 + (2 sqrt 3 + pi) K0), rounds up to 99
double rect_Ku();   // 12 sqrt 3 (1 + pi K0), rounds up to 57

double psi(double x);  // sinh(x)/x
double Phi(double tau);  // tau^4 / (sinh^2 tau - tau^2), Phi(0) = 3

struct PlanarNorms {
  double G2 = 0, e2 = 0, u2 = 0, v2 = 0;
};

/// ||G||^2, ||e||^2, ||u||^2, ||v||^2 on [0,h] x [0,L] for G_alpha (star = false) or G_* (star = true).
PlanarNorms planar_norms(const PlanarField& f, double h, double L, double alpha, bool star = false);

struct BasicInequalityReport {
  double lhs = 0;        // ||G_alpha||^2
  double rhs100 = 0;     // 100 ||e|| (||u||/h + ||e||)
  double rhs99_57 = 0;   // 99 ||e||^2 + 57/h ||u|| ||e||
  double margin = 0;     // min(rhs100, rhs99_57) - lhs, relative to max(lhs, tiny)
  bool holds = true;
};

/// Requires u = 0 on y in {0, L}; alpha in [-1, 1], h in (0, 1).
BasicInequalityReport check_basic_inequality(const PlanarField& f, double alpha, double h, double L);

struct HarmonicLemmaReport {
  double extremal_lhs = 0, extremal_rhs = 0;
  double equality_error = 0;        // |lhs - rhs| / rhs on the extremal, by quadrature
  double closed_form_error = 0;     // same from closed-form integrals
  int trials = 0;
  int violations_hi = 0, violations_shi = 0;
  double min_margin = 0;            // min over trials of (rhs - lhs)/rhs for the 2 sqrt 3 form
};

/// Sharp form on the cosh extremal plus `trials` random harmonic sine series of degree <= 8.
HarmonicLemmaReport harmonic_lemma_check(double h, double L, int resolution = 32, int trials = 0,
                                         std::uint64_t seed = 1);

struct HarmonicSolution {
  int nx = 0, ny = 0;  // cells across h and L
  double h = 0, L = 0;
  std::vector<double> w;  // (nx+1)(ny+1) nodal values, x fastest
  int iterations = 0;
  double residual = 0;  // max |5-point Laplacian| * min(dx, dy)^2 / max|w|

  double at(int i, int j) const { return w[static_cast<std::size_t>(j) * (nx + 1) + i]; }
};

/// 5-point Dirichlet solve with w = u on the boundary (CG; the stencil diagonal is constant).
HarmonicSolution harmonic_projection(const PlanarField& f, double h, double L, int nx, int ny, double tol = 1e-12,
                                     int max_iter = 200000);

/// max over interior nodes of |5-point Laplacian of fn| (fn harmonic: pure truncation error).
double laplacian_truncation(const std::function<double(double, double)>& fn, double h, double L, int nx, int ny);

struct MainEstimateReport {
  double grad_diff = 0;  // ||grad u - grad w||
  double u_diff = 0;     // ||u - w||
  double e_norm = 0;     // ||e_alpha||
  double grad_bound = 0, u_bound = 0;  // (sqrt 2 + 1/pi)||e||, (h/pi)(sqrt 2 + 1/pi)||e||
  double grad_ratio = 0, u_ratio = 0;  // diff / bound
  bool holds = true;                   // both ratios <= 1.05
  double residual = 0;
  int iterations = 0;
};

/// Requires u = v = 0 on y in {0, L}.
MainEstimateReport main_estimate_check(const PlanarField& f, double alpha, double h, double L, int nx, int ny);

/// Frozen constants for the periodic theorems (the statements leave them abstract).
inline constexpr double kPeriodicC0 = 4.0;
inline constexpr double kPeriodicSigma = 0.1;

struct PeriodicReport {
  double ratio_alpha = 0;  // ||G_a||^2 / (||e_a|| (||u||/h + ||e_a||))
  double ratio_star = 0;   // ||G_*||^2 / (||e_*||^2 + ||e_*|| ||u||/h + ||v||^2)
  bool holds = true;
};

/// Period 2 pi in y; h < sigma.
PeriodicReport check_periodic_inequalities(const PlanarField& f, double alpha, double h, double C0 = kPeriodicC0,
                                           double sigma = kPeriodicSigma);

// Seeded random fields (trig degree <= 8 in y, polynomial degree <= 3 in x/h).
PlanarField random_zero_horizontal_field(std::mt19937_64& rng, double h, double L);
PlanarField random_zero_both_field(std::mt19937_64& rng, double h, double L);
PlanarField random_periodic_field(std::mt19937_64& rng, double h);

struct RectKornSuite {
  int trials = 0;
  int violations_basic = 0;     // 100-form or 99/57-form
  int violations_hi = 0;
  int violations_periodic = 0;
  int violations_mainest = 0;
  double min_margin_basic = 0;
  double min_margin_hi = 0;
  double max_ratio_periodic_alpha = 0, max_ratio_periodic_star = 0;
  double extremal_equality_error = 0;
  double max_mainest_grad_ratio = 0, max_mainest_u_ratio = 0;
  int mainest_fields = 0;
};

/// Randomized run: per-trial generators seeded from (seed, trial index); deterministic for any `jobs`.
RectKornSuite run_rect_korn(double h, double L, int trials, std::uint64_t seed, int jobs = 1, int mainest_fields = 8);

}  // namespace shellbuckle
