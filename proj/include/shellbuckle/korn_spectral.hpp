/** @file korn_spectral.hpp
 *  @brief Per-(m, n) radial generalized eigenproblems for the Korn constant of the shell and for
 *  the component-wise gradient bounds.
 *
 *  Mode structure (real block form):
 *    u_r = a(r) sin(mz) cos(nt),  u_theta = b(r) sin(mz) sin(nt),  u_z = w(r) cos(mz) cos(nt).
 *  For n = 0 the torsional family u_theta = b(r) sin(mz) is carried in the same block (it decouples).
 *  Quadratic forms are the 3-D integrals (volume measure) divided by pi L.
 */
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "shellbuckle/material.hpp"

namespace shellbuckle {

enum class RadialScheme { Legendre, P1 };

/// Radial basis sampled at quadrature nodes of I_h.
struct RadialGrid {
  RadialScheme scheme = RadialScheme::Legendre;
  int N = 0;                 // basis functions per component
  Eigen::VectorXd r, w;      // quadrature nodes and weights (dr)
  Eigen::MatrixXd V, D;      // basis values and r-derivatives at the nodes
  Eigen::VectorXd mean;      // integrals of the basis functions over I_h (dr)
};

RadialGrid make_radial_grid(const ShellGeometry& g, int N = 12, RadialScheme scheme = RadialScheme::Legendre);

enum GradComponent : std::uint32_t {
  kRR = 1u << 0, kRT = 1u << 1, kRZ = 1u << 2,
  kTR = 1u << 3, kTT = 1u << 4, kTZ = 1u << 5,
  kZR = 1u << 6, kZT = 1u << 7, kZZ = 1u << 8,
};

/// Sum of squared gradient entries selected by `mask`, plus optionally ||u_r||^2 and ||e||^2.
struct FormKind {
  std::uint32_t mask = 0;
  bool ur = false;
  bool strain = false;

  static FormKind strain_norm() { return {0, false, true}; }
  static FormKind grad_norm() { return {0x1FFu, false, false}; }
  static FormKind component(std::uint32_t m) { return {m, false, false}; }
  static FormKind ur_norm() { return {0, true, false}; }
  static FormKind urz_norm() { return {kRZ, false, false}; }
  static FormKind uthz_norm() { return {kTZ, false, false}; }
};

/// Component groups of the gradient bounds: "tt+zz", "rt+tr", "ur+rz+zr", "tz+zt".
FormKind component_group(const std::string& tag);
/// Predicted exponent of the supremum ratio for each group.
double component_group_exponent(const std::string& tag);

enum class ZStructure { Fourier, Free };

struct QuadraticFormPair {
  Eigen::MatrixXd S, M;  // reduced (after constraint elimination)
  Eigen::MatrixXd Z;     // full = Z * reduced
};

QuadraticFormPair assemble_mode_forms(int m, int n, const ShellGeometry& g, const RadialGrid& grid, FormKind numerator,
                                      FormKind denominator, ZStructure z = ZStructure::Fourier);

/// Assembles a single form on the full (unreduced) DOF set.
Eigen::MatrixXd assemble_form(int m, int n, const ShellGeometry& g, const RadialGrid& grid, FormKind kind,
                              ZStructure z = ZStructure::Fourier);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;  // reduced coordinates
  double residual = 0.0;   // ||S v - value M v|| / ||M v||
};

/// Smallest generalized eigenvalue of (S, M) by Cholesky reduction and a symmetric eigensolver.
EigenPair min_rayleigh(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M);
EigenPair min_rayleigh(const QuadraticFormPair& pair);
/// Largest generalized eigenvalue of (S, M).
EigenPair max_rayleigh(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M);

struct ModeScan {
  int m_max = 0;  // 0 selects min(512, ceil(3 h^{-1/2}))
  int n_max = 0;
};

struct ScanResult {
  double value = 0.0;
  int m = 0, n = 0;
  bool on_boundary = false;
  int evaluations = 0;
  int m_max = 0, n_max = 0;
};

ModeScan default_scan(const ShellGeometry& g);

/// K(V_h): min over scanned modes of min_rayleigh(||e||^2, ||grad u||^2).
ScanResult korn_constant(const ShellGeometry& g, ModeScan scan = {}, int N = 12, int jobs = 1,
                         RadialScheme scheme = RadialScheme::Legendre);
/// Per-mode Korn Rayleigh minimum.
double korn_mode_value(int m, int n, const ShellGeometry& g, const RadialGrid& grid);

/// sup over scanned modes of component-norm^2 / ||e||^2.
ScanResult component_bound(const ShellGeometry& g, const std::string& group, ModeScan scan = {}, int N = 12,
                           int jobs = 1);
double component_mode_value(int m, int n, const ShellGeometry& g, const RadialGrid& grid, FormKind kind);

}  // namespace shellbuckle
