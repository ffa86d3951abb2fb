/** @file koiter.hpp
 *  @brief Per-Fourier-mode algebra: reduced forms, optimal tangential amplitudes, the load surface
 *  lambda*(h; m, n), integer minimization, the Koiter circle and explicit buckling modes.
 */
#pragma once

#include <complex>
#include <utility>

#include "shellbuckle/cyl_fields.hpp"
#include "shellbuckle/material.hpp"

namespace shellbuckle {

using cplx = std::complex<double>;

struct WaveNumbers {
  int m = 1;
  int n = 0;
  double m_hat = 0.0;
};

WaveNumbers wave_numbers(int m, int n, double L);

struct ModeAmplitudes {
  cplx fr, ft, fz;
};

struct ReducedForms {
  double Q0 = 0, Q1 = 0, Q1star = 0, B = 0;
};

ReducedForms reduced_forms(const WaveNumbers& wn, const ModeAmplitudes& amp, double Lambda);

/// Minimizer of Q0 over (f_theta, f_z) for fixed f_r.
std::pair<cplx, cplx> optimal_tangential(cplx fr, const WaveNumbers& wn, double Lambda);

/// mu [4 m^2 (L+1)/((L+2)(n^2+m^2)^2) + h^2 (L+2)(m^2+n^2)^2/(12 m^2)] with real n allowed.
double lambda_star(const ShellGeometry& g, const Material& mat, double m_hat, double n);
double lambda_star(const ShellGeometry& g, const Material& mat, const WaveNumbers& wn);

/// Continuum minimum 2 mu h sqrt((Lambda+1)/3).
double classical_load(const ShellGeometry& g, const Material& mat);

double circle_residual(const ShellGeometry& g, double Lambda, double m_hat, double n);

/// M(h): largest m whose Koiter-circle radicand is nonnegative.
int max_wavenumber(const ShellGeometry& g, double Lambda);
/// Real-valued n on the Koiter circle for axial order m (before flooring).
double koiter_circle_n_real(int m, const ShellGeometry& g, double Lambda);
int koiter_circle_n(int m, const ShellGeometry& g, double Lambda);

struct SearchBounds {
  int m_max = 0;  // 0 selects the default 2 M(h)
  int n_max = 0;  // 0 selects the default derived from m_max
};

struct KoiterResult {
  double lambda_hat = 0.0;
  int m_star = 0, n_star = 0;
  double circle_residual = 0.0;
  double closed_form = 0.0;
  int m_max = 0, n_max = 0;
};

KoiterResult minimize_load(const ShellGeometry& g, const Material& mat, SearchBounds bounds = {}, int jobs = 1);

/// Real amplitudes of f_r = A sin(mz) cos(n t), f_theta = B sin(mz) sin(n t), f_z = C cos(mz) cos(n t).
struct ModeCoefficients {
  WaveNumbers wn;
  double A = 1.0, B = 0.0, C = 0.0;
};

/// Single Fourier mode lifted by U(f).
DisplacementField fourier_mode(const ModeCoefficients& c, BcTag bc = BcTag::AverageTop);

/// Optimal tangential coefficients at integer (m, n); K* of the field equals lambda_star(h; m, n).
ModeCoefficients optimal_mode_coefficients(int m, int n, const ShellGeometry& g, const Material& mat);
/// The closed display obtained after substituting the Koiter-circle identity; equals the optimal
/// coefficients when (m, n) lies exactly on the circle.
ModeCoefficients circle_mode_coefficients(int m, int n, const ShellGeometry& g, const Material& mat);

/// Buckling mode for axial order m at n = n(m), built from the optimal amplitudes.
DisplacementField buckling_mode(int m, const ShellGeometry& g, const Material& mat);

}  // namespace shellbuckle
