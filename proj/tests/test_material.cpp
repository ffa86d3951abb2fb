#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shellbuckle/error.hpp"
#include "shellbuckle/material.hpp"

using namespace shellbuckle;

TEST_CASE("derived constants") {
  const Material m = derive_material(1.0, 0.3);
  CHECK(m.mu == doctest::Approx(0.38461538461538).epsilon(1e-13));
  CHECK(m.Lambda == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(m.lambda_lame == doctest::Approx(m.mu * m.Lambda).epsilon(1e-15));

  const Material m2 = derive_material(2.0, 0.25);
  CHECK(m2.lambda_lame == doctest::Approx(0.8).epsilon(1e-14));

  // nu -> 0 limit
  const Material m0 = derive_material(1.0, 1e-12);
  CHECK(m0.Lambda == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(m0.mu == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("derive_material rejects bad parameters") {
  CHECK_THROWS_AS(derive_material(0.0, 0.3), DomainError);
  CHECK_THROWS_AS(derive_material(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(derive_material(1.0, 0.0), DomainError);
  try {
    derive_material(1.0, 0.7);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("nu") != std::string::npos);
  }
}

TEST_CASE("energy density is coercive with constant 2 mu") {
  const Material m = derive_material(1.0, 0.3);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 200; ++k) {
    Sym3 e{};
    double sq = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        e[i][j] = e[j][i] = nd(rng);
      }
    for (const auto& row : e)
      for (double v : row) sq += v * v;
    CHECK(m.energy_density(e) >= m.coercivity() * sq - 1e-12);
  }
}

TEST_CASE("trivial branch") {
  const Material m = derive_material(1.0, 0.3);
  const TrivialBranch zero = solve_trivial_branch(m, 0.0);
  CHECK(zero.a == 0.0);
  CHECK(zero.b == 0.0);

  const TrivialBranch t = solve_trivial_branch(m, 0.01);
  // independent oracle: Newton on the cubic from b = lambda / E
  double b = 0.01;
  for (int i = 0; i < 50; ++i) b -= (b * (1 - b) * (2 - b) - 0.02) / (3 * b * b - 6 * b + 2);
  CHECK(t.b == doctest::Approx(b).epsilon(1e-12));
  CHECK(t.b == doctest::Approx(0.0101541).epsilon(1e-5));
  CHECK(t.a == doctest::Approx(std::sqrt(1 + 0.3 * (2 * b - b * b)) - 1).epsilon(1e-12));
  CHECK(t.a == doctest::Approx(0.0030262).epsilon(1e-4));
  CHECK(t.residual <= 1e-12);

  const double lim = trivial_branch_limit(m);
  const TrivialBranch edge = solve_trivial_branch(m, lim * (1 - 1e-12));
  CHECK(edge.b == doctest::Approx(1 - 1 / std::sqrt(3.0)).epsilon(1e-5));
  CHECK(edge.b < 1 - 1 / std::sqrt(3.0));
  CHECK_THROWS_AS(solve_trivial_branch(m, lim), DomainError);
  CHECK_THROWS_AS(solve_trivial_branch(m, -1.0), DomainError);
}

TEST_CASE("trivial branch properties: residual, monotonicity, small-load slopes") {
  for (double E : {0.5, 1.0, 3.0}) {
    const Material m = derive_material(E, 0.3);
    const double lim = trivial_branch_limit(m);
    double prev = -1.0;
    for (int k = 0; k < 200; ++k) {
      const double load = lim * k / 200.0;
      const TrivialBranch t = solve_trivial_branch(m, load);
      CHECK(t.residual <= 1e-12 * E);
      CHECK(t.b > prev);
      CHECK(t.b < 1 - 1 / std::sqrt(3.0));
      prev = t.b;
    }
    const double small = 1e-8 * E;
    const TrivialBranch t = solve_trivial_branch(m, small);
    CHECK(t.b / small == doctest::Approx(1 / E).epsilon(1e-4));
    CHECK(t.a / small == doctest::Approx(0.3 / E).epsilon(1e-4));
  }
}

TEST_CASE("stress weights") {
  const StressWeight p = perfect_stress();
  for (double th : {0.0, 1.0, 4.0})
    for (double z : {0.0, 2.0}) {
      const Sym3 s = p(th, z);
      CHECK(s[2][2] == 1.0);
      CHECK(s[0][0] + s[1][1] + s[2][2] == 1.0);
      CHECK(s[0][1] == 0.0);
      CHECK(s[1][2] == 0.0);
    }
  const auto sh = shear_imperfection([](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
                                     [](double) { return 0.0; });
  const Sym3 s = sh(0.0, 1.0);
  CHECK(s[1][2] == 1.0);
  CHECK(s[2][1] == 1.0);
  CHECK(s[2][2] == doctest::Approx(0.0));
  const Sym3 s2 = sh(0.5, 2.0);
  CHECK(s2[2][2] == doctest::Approx(2.0 * std::sin(0.5)));

  const auto tz = shear_imperfection([](double) { return 0.0; }, [](double) { return 0.0; },
                                     [](double) { return 1.0; });
  CHECK(tz(1.3, 0.7)[2][2] == 1.0);
  CHECK(tz(1.3, 0.7)[1][2] == 0.0);

  const auto hoop = hoop_imperfection([](double) { return 1.0; });
  CHECK(hoop(0.2, 0.1)[1][1] == 1.0);
  CHECK(hoop(0.2, 0.1)[2][2] == 0.0);

  CHECK_THROWS_AS(hoop_imperfection([](double t) { return t; }), DomainError);
}
