#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "shellbuckle/cyl_fields.hpp"
#include "shellbuckle/error.hpp"
#include "shellbuckle/korn_spectral.hpp"
#include "shellbuckle/scaling.hpp"

using namespace shellbuckle;
using namespace oracles;
using std::numbers::pi;

TEST_CASE("min_rayleigh basic cases") {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  CHECK(min_rayleigh(I, I).value == doctest::Approx(1.0));
  Eigen::MatrixXd S(2, 2);
  S << 2, 0, 0, 3;
  CHECK(min_rayleigh(S, I).value == doctest::Approx(2.0));
  CHECK(max_rayleigh(S, I).value == doctest::Approx(3.0));
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(min_rayleigh(S, bad), SolverError);
}

TEST_CASE("min_rayleigh agrees with determinant bisection on random SPD pairs") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 20; ++k) {
    const int n = 3 + k % 8;
    Eigen::MatrixXd A(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = nd(rng), B(i, j) = nd(rng);
    const Eigen::MatrixXd S = A * A.transpose();
    const Eigen::MatrixXd M = B * B.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    const EigenPair ep = min_rayleigh(S, M);
    CHECK(ep.value == doctest::Approx(bisection_min_eig(S, M)).epsilon(1e-8));
    CHECK(ep.residual <= 1e-8);
    const Eigen::VectorXd v = ep.vector;
    CHECK((S * v - ep.value * M * v).norm() <= 1e-8 * (M * v).norm());
  }
}

TEST_CASE("radial grids") {
  const ShellGeometry g = make_geometry(0.01, pi);
  for (RadialScheme s : {RadialScheme::Legendre, RadialScheme::P1}) {
    const RadialGrid grid = make_radial_grid(g, 10, s);
    CHECK(grid.w.sum() == doctest::Approx(g.h).epsilon(1e-13));
    CHECK((grid.w.array() > 0).all());
    // derivative of a linear profile is exact
    Eigen::VectorXd c = Eigen::VectorXd::Zero(grid.N);
    if (s == RadialScheme::Legendre) {
      c[1] = g.h / 2;  // P_1(s) * h/2 = r - 1
    } else {
      for (int i = 0; i < grid.N; ++i) c[i] = -g.h / 2 + g.h * i / (grid.N - 1);
    }
    const Eigen::VectorXd vals = grid.V * c, ders = grid.D * c;
    for (Eigen::Index q = 0; q < grid.r.size(); ++q) {
      CHECK(vals[q] == doctest::Approx(grid.r[q] - 1.0).epsilon(1e-12));
      CHECK(ders[q] == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("assembled forms") {
  const ShellGeometry g = make_geometry(0.02, 2.0);
  const RadialGrid grid = make_radial_grid(g, 8);
  const int N = grid.N;

  SUBCASE("identical forms give Rayleigh quotient one") {
    const QuadraticFormPair p = assemble_mode_forms(2, 3, g, grid, FormKind::grad_norm(), FormKind::grad_norm());
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd v(p.S.rows());
      for (auto& x : v) x = nd(rng);
      CHECK(v.dot(p.S * v) / v.dot(p.M * v) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(min_rayleigh(p).value == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("u_r,z norm of a constant radial profile") {
    const Eigen::MatrixXd F = assemble_form(1, 0, g, grid, FormKind::urz_norm());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3 * N);
    v[0] = 1.0;
    const double mh = pi / g.L;
    CHECK(v.dot(F * v) == doctest::Approx(mh * mh * g.h).epsilon(1e-12));
  }
  SUBCASE("rigid rotation profile is in the kernel of the strain form") {
    const Eigen::MatrixXd F = assemble_form(0, 0, g, grid, FormKind::strain_norm(), ZStructure::Free);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3 * N);
    v[N + 0] = 1.0;          // b(r) = r = P_0 + (h/2) P_1
    v[N + 1] = g.h / 2;
    CHECK((F * v).norm() <= 1e-12 * F.norm());
  }
  SUBCASE("symmetry and constraint elimination") {
    for (auto [m, n] : {std::pair{0, 0}, std::pair{0, 3}, std::pair{1, 0}, std::pair{3, 5}}) {
      const QuadraticFormPair p =
          assemble_mode_forms(m, n, g, grid, FormKind::strain_norm(), FormKind::grad_norm());
      CHECK((p.S - p.S.transpose()).norm() <= 1e-12 * p.S.norm());
      CHECK(p.M.llt().info() == Eigen::Success);
      const EigenPair ep = min_rayleigh(p);
      CHECK(ep.residual <= 1e-8);
    }
    // the constant u_z profile is removed for m = n = 0
    const QuadraticFormPair p00 =
        assemble_mode_forms(0, 0, g, grid, FormKind::strain_norm(), FormKind::grad_norm());
    CHECK(p00.S.rows() == N - 1);
    CHECK(std::abs(grid.mean.dot(p00.Z.bottomRows(N).col(0))) <= 1e-14);
  }
}

TEST_CASE("assembled forms equal the 3-D integrals of separable fields") {
  // radial profiles a = 1 + 2s, b = -0.5 + s, w = 0.3 - s with s = r - 1, normalized by pi L
  const ShellGeometry g = make_geometry(0.05, 2.0);
  const RadialGrid grid = make_radial_grid(g, 6);
  const int N = grid.N, m = 2, n = 3;
  const double mh = pi * m / g.L, hh = g.h / 2;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3 * N);
  v[0] = 1.0, v[1] = 2 * hh;        // a
  v[N] = -0.5, v[N + 1] = hh;       // b
  v[2 * N] = 0.3, v[2 * N + 1] = -hh;  // w
  const DisplacementField u(
      [=](const CylPoint& p) {
        const double s = p.r - 1, a = 1 + 2 * s, b = -0.5 + s, w = 0.3 - s;
        const double sz = std::sin(mh * p.z), cz = std::cos(mh * p.z), c = std::cos(n * p.theta),
                     sn = std::sin(n * p.theta);
        FieldJet j;
        j.ur = {a * sz * c, 2 * sz * c, -n * a * sz * sn, mh * a * cz * c};
        j.ut = {b * sz * sn, sz * sn, n * b * sz * c, mh * b * cz * sn};
        j.uz = {w * cz * c, -cz * c, -n * w * cz * sn, -mh * w * sz * c};
        return j;
      },
      1);
  const QuadratureGrid qg = make_mode_grid(g, m, n);
  const auto ref = integrate<4>(u, qg, [](const CylPoint& p, const FieldJet& j) {
    const Mat3 gr = gradient(j, p.r);
    return Accum<4>{frob_sq(gr), frob_sq(sym(gr)), j.ur.v * j.ur.v, gr[1][2] * gr[1][2] + gr[2][1] * gr[2][1]};
  });
  const double norm = pi * g.L;
  CHECK(v.dot(assemble_form(m, n, g, grid, FormKind::grad_norm()) * v) == doctest::Approx(ref[0] / norm).epsilon(1e-10));
  CHECK(v.dot(assemble_form(m, n, g, grid, FormKind::strain_norm()) * v) ==
        doctest::Approx(ref[1] / norm).epsilon(1e-10));
  CHECK(v.dot(assemble_form(m, n, g, grid, FormKind::ur_norm()) * v) == doctest::Approx(ref[2] / norm).epsilon(1e-10));
  CHECK(v.dot(assemble_form(m, n, g, grid, component_group("tz+zt")) * v) ==
        doctest::Approx(ref[3] / norm).epsilon(1e-10));
}

TEST_CASE("fit_exponent") {
  std::vector<std::pair<double, double>> pts;
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) pts.emplace_back(h, std::pow(h, 1.5));
  ScalingFit f = fit_exponent(pts);
  CHECK(f.exponent == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.max_residual <= 1e-12);
  pts.clear();
  for (double h : {0.5, 0.2, 0.1, 0.05}) pts.emplace_back(h, 3 * std::pow(h, 1.25));
  f = fit_exponent(pts);
  CHECK(f.exponent == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
  pts.pop_back();
  CHECK_THROWS_AS(fit_exponent(pts), ConfigError);
}

TEST_CASE("Korn constant") {
  const ShellGeometry g = make_geometry(1e-2, pi);
  const ScanResult r = korn_constant(g);
  const double c = r.value / std::pow(g.h, 1.5);
  CHECK(c >= 0.05);
  CHECK(c <= 50.0);
  // frozen regression value (N = 12 Legendre modes, default scan)
  CHECK(c == doctest::Approx(0.138522).epsilon(1e-5));
  CHECK(r.m == 1);
  CHECK(r.n == 5);
  CHECK_FALSE(r.on_boundary);

  // doubling N and the P1 cross-check
  const double k24 = korn_mode_value(r.m, r.n, g, make_radial_grid(g, 24));
  CHECK(std::abs(k24 - r.value) / k24 < 1e-2);
  const double kp1 = korn_mode_value(r.m, r.n, g, make_radial_grid(g, 64, RadialScheme::P1));
  CHECK(std::abs(kp1 - k24) / k24 < 1e-4);

  // restriction raises the infimum; a larger scan cannot raise it
  CHECK(korn_mode_value(1, 0, g, make_radial_grid(g, 12)) > r.value);
  const ScanResult wide = korn_constant(g, {60, 60});
  CHECK(wide.value <= r.value);

  // parallel scan is deterministic
  const ScanResult par = korn_constant(g, {}, 12, 3);
  CHECK(par.value == r.value);
  CHECK(par.m == r.m);
  CHECK(par.n == r.n);

  // a tiny window pins the argmin to the boundary
  const ScanResult small = korn_constant(g, {1, 2});
  CHECK(small.on_boundary);
}

TEST_CASE("component bounds") {
  const ShellGeometry g = make_geometry(1e-2, pi);
  const RadialGrid grid = make_radial_grid(g, 12);
  // theta-theta + z-z never exceeds the strain norm
  for (int m = 0; m <= 20; m += 4)
    for (int n = 0; n <= 20; n += 3)
      CHECK(component_mode_value(m, n, g, grid, component_group("tt+zz")) <= 1.0 + 1e-9);
  // u_r group: frozen constant C with sup <= C / h
  const ScanResult ur = component_bound(g, "ur+rz+zr");
  CHECK(ur.value * g.h <= 5.3830);
  CHECK(ur.value * g.h == doctest::Approx(5.38292).epsilon(1e-5));
  CHECK_THROWS_AS(component_group("rr"), ConfigError);
}

TEST_CASE("theta-z component exponent") {
  std::vector<std::pair<double, double>> pts;
  for (double e : {2.0, 2.5, 3.0, 3.5, 4.0}) {
    const ShellGeometry g = make_geometry(std::pow(10.0, -e), pi);
    pts.emplace_back(g.h, component_bound(g, "tz+zt").value);
  }
  const ScalingFit f = fit_exponent(pts);
  CHECK(f.exponent == doctest::Approx(-0.5).epsilon(0.3));  // i.e. within 0.15
  CHECK(std::abs(f.exponent + 0.5) <= 0.15);
}
