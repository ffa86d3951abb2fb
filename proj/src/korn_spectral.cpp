#include "shellbuckle/korn_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "shellbuckle/error.hpp"
#include "shellbuckle/parallel.hpp"
#include "shellbuckle/quadrature.hpp"

namespace shellbuckle {

namespace {

// Legendre P_k and P_k' at s for k = 0..N-1.
void legendre_row(double s, int N, double* p, double* dp) {
  p[0] = 1.0;
  dp[0] = 0.0;
  if (N > 1) {
    p[1] = s;
    dp[1] = 1.0;
  }
  for (int k = 2; k < N; ++k) {
    p[k] = ((2.0 * k - 1.0) * s * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
    dp[k] = dp[k - 2] + (2.0 * k - 1.0) * p[k - 1];
  }
}

}  // namespace

RadialGrid make_radial_grid(const ShellGeometry& g, int N, RadialScheme scheme) {
  if (N < 2) throw ConfigError("make_radial_grid: N must be >= 2");
  RadialGrid grid;
  grid.scheme = scheme;
  grid.N = N;
  const double a = g.r_inner(), h = g.h;
  if (scheme == RadialScheme::Legendre) {
    const Rule1D q = gauss_legendre(N + 8, a, g.r_outer());
    const int nq = static_cast<int>(q.size());
    grid.r = Eigen::Map<const Eigen::VectorXd>(q.x.data(), nq);
    grid.w = Eigen::Map<const Eigen::VectorXd>(q.w.data(), nq);
    grid.V.resize(nq, N);
    grid.D.resize(nq, N);
    std::vector<double> p(N), dp(N);
    for (int i = 0; i < nq; ++i) {
      legendre_row(2.0 * (grid.r[i] - 1.0) / h, N, p.data(), dp.data());
      for (int k = 0; k < N; ++k) {
        grid.V(i, k) = p[k];
        grid.D(i, k) = dp[k] * 2.0 / h;
      }
    }
  } else {
    // hat functions on N equispaced nodes, 3-point Gauss per element
    const int ne = N - 1;
    const double dx = h / ne;
    const Rule1D ref = gauss_legendre(3, 0.0, 1.0);
    const int nq = ne * 3;
    grid.r.resize(nq);
    grid.w.resize(nq);
    grid.V = Eigen::MatrixXd::Zero(nq, N);
    grid.D = Eigen::MatrixXd::Zero(nq, N);
    for (int e = 0; e < ne; ++e)
      for (int j = 0; j < 3; ++j) {
        const int i = 3 * e + j;
        const double t = ref.x[j];
        grid.r[i] = a + (e + t) * dx;
        grid.w[i] = ref.w[j] * dx;
        grid.V(i, e) = 1.0 - t;
        grid.V(i, e + 1) = t;
        grid.D(i, e) = -1.0 / dx;
        grid.D(i, e + 1) = 1.0 / dx;
      }
  }
  grid.mean = grid.V.transpose() * grid.w;
  return grid;
}

FormKind component_group(const std::string& tag) {
  if (tag == "tt+zz") return FormKind::component(kTT | kZZ);
  if (tag == "rt+tr") return FormKind::component(kRT | kTR);
  if (tag == "ur+rz+zr") return {kRZ | kZR, true, false};
  if (tag == "tz+zt") return FormKind::component(kTZ | kZT);
  throw ConfigError("unknown component group '" + tag + "' (expected tt+zz, rt+tr, ur+rz+zr, tz+zt)");
}

double component_group_exponent(const std::string& tag) {
  if (tag == "tt+zz") return 0.0;
  if (tag == "rt+tr") return -1.5;
  if (tag == "ur+rz+zr") return -1.0;
  if (tag == "tz+zt") return -0.5;
  throw ConfigError("unknown component group '" + tag + "'");
}

namespace {

enum Angular { kSc, kSs, kCc, kCs };

struct Entry {
  Eigen::MatrixXd B;  // nq x 3N
  Angular type;
};

// Gradient entries as linear maps of the (a, b, w) coefficients, in the order rr, rt, rz, tr, tt, tz, zr, zt, zz.
std::vector<Entry> gradient_entries(int n, double mh, const RadialGrid& grid) {
  const int N = grid.N;
  const Eigen::Index nq = grid.r.size();
  const Eigen::VectorXd inv_r = grid.r.cwiseInverse();
  const Eigen::MatrixXd Vr = inv_r.asDiagonal() * grid.V;
  auto blk = [&](const Eigen::MatrixXd& A, const Eigen::MatrixXd& Bm, const Eigen::MatrixXd& C) {
    Eigen::MatrixXd out(nq, 3 * N);
    out << A, Bm, C;
    return out;
  };
  const Eigen::MatrixXd Z0 = Eigen::MatrixXd::Zero(nq, N);
  const double nn = n;
  return {
      {blk(grid.D, Z0, Z0), kSc},                // u_r,r
      {blk(-nn * Vr, -Vr, Z0), kSs},             // (u_r,t - u_t)/r
      {blk(mh * grid.V, Z0, Z0), kCc},           // u_r,z
      {blk(Z0, grid.D, Z0), kSs},                // u_t,r
      {blk(Vr, nn * Vr, Z0), kSc},               // (u_t,t + u_r)/r
      {blk(Z0, mh * grid.V, Z0), kCs},           // u_t,z
      {blk(Z0, Z0, grid.D), kCc},                // u_z,r
      {blk(Z0, Z0, -nn * Vr), kCs},              // u_z,t / r
      {blk(Z0, Z0, -mh * grid.V), kSc},          // u_z,z
  };
}

}  // namespace

Eigen::MatrixXd assemble_form(int m, int n, const ShellGeometry& g, const RadialGrid& grid, FormKind kind,
                              ZStructure z) {
  if (m < 0 || n < 0) throw DomainError("assemble_form: m and n must be nonnegative");
  const double pi = std::numbers::pi, L = g.L;
  const double mh = z == ZStructure::Fourier ? pi * m / L : 0.0;
  // integrals over theta and z of the squared angular factors, normalized by pi L
  const double wt = n >= 1 ? pi : 2.0 * pi;
  double wS, wC;
  if (z == ZStructure::Free) {
    wS = wC = L;
  } else {
    wS = m >= 1 ? 0.5 * L : 0.0;
    wC = m >= 1 ? 0.5 * L : L;
  }
  const double type_w[4] = {wS * wt / (pi * L), wS * wt / (pi * L), wC * wt / (pi * L), wC * wt / (pi * L)};

  const auto entries = gradient_entries(n, mh, grid);
  const Eigen::VectorXd rw = grid.w.cwiseProduct(grid.r);
  const int dim = 3 * grid.N;
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(dim, dim);
  auto add = [&](const Eigen::MatrixXd& B, Angular t, double c) {
    if (type_w[t] == 0.0) return;
    F.noalias() += (c * type_w[t]) * B.transpose() * rw.asDiagonal() * B;
  };
  for (int c = 0; c < 9; ++c)
    if (kind.mask & (1u << c)) add(entries[c].B, entries[c].type, 1.0);
  if (kind.ur) {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(grid.r.size(), dim);
    B.leftCols(grid.N) = grid.V;
    add(B, kSc, 1.0);
  }
  if (kind.strain) {
    add(entries[0].B, kSc, 1.0);
    add(entries[4].B, kSc, 1.0);
    add(entries[8].B, kSc, 1.0);
    // off-diagonal pairs appear twice in |e|^2
    add(0.5 * (entries[1].B + entries[3].B), kSs, 2.0);
    add(0.5 * (entries[2].B + entries[6].B), kCc, 2.0);
    add(0.5 * (entries[5].B + entries[7].B), kCs, 2.0);
  }
  return 0.5 * (F + F.transpose());
}

QuadraticFormPair assemble_mode_forms(int m, int n, const ShellGeometry& g, const RadialGrid& grid, FormKind numerator,
                                      FormKind denominator, ZStructure z) {
  QuadraticFormPair pair;
  const int N = grid.N, dim = 3 * N;
  if (z == ZStructure::Fourier && m == 0) {
    // u_r and u_theta vanish identically; keep the u_z block
    pair.Z = Eigen::MatrixXd::Zero(dim, N);
    pair.Z.bottomRows(N).setIdentity();
    if (n == 0) {
      // zero-average constraint on u_z removes the constant mode
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(grid.mean);
      const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(N, N);
      pair.Z = pair.Z * Q.rightCols(N - 1);
    }
  } else {
    pair.Z = Eigen::MatrixXd::Identity(dim, dim);
  }
  const Eigen::MatrixXd Sf = assemble_form(m, n, g, grid, numerator, z);
  const Eigen::MatrixXd Mf = assemble_form(m, n, g, grid, denominator, z);
  pair.S = pair.Z.transpose() * Sf * pair.Z;
  pair.M = pair.Z.transpose() * Mf * pair.Z;
  pair.S = 0.5 * (pair.S + pair.S.transpose());
  pair.M = 0.5 * (pair.M + pair.M.transpose());
  return pair;
}

namespace {

EigenPair extreme_rayleigh(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M, bool largest) {
  if (S.rows() != M.rows() || S.rows() != S.cols() || M.rows() != M.cols())
    throw ConfigError("rayleigh: matrix dimensions differ");
  const Eigen::VectorXd diag = M.diagonal();
  if ((diag.array() <= 0.0).any()) throw SolverError("denominator form not positive-definite (nonpositive diagonal)");
  // symmetric diagonal scaling keeps the Cholesky factor well conditioned
  const Eigen::VectorXd d = diag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd Ss = d.asDiagonal() * S * d.asDiagonal();
  const Eigen::MatrixXd Ms = d.asDiagonal() * M * d.asDiagonal();
  Eigen::LLT<Eigen::MatrixXd> llt(Ms);
  if (llt.info() != Eigen::Success) throw SolverError("denominator form not positive-definite");
  const auto Lf = llt.matrixL();
  Eigen::MatrixXd C = Lf.solve(Ss);
  C = Lf.solve(C.transpose()).transpose();
  C = 0.5 * (C + C.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
  const Eigen::Index k = largest ? C.rows() - 1 : 0;
  EigenPair out;
  out.value = es.eigenvalues()[k];
  const Eigen::VectorXd y = llt.matrixU().solve(es.eigenvectors().col(k));
  out.vector = d.asDiagonal() * y;
  const Eigen::VectorXd Mv = Ms * y;
  out.residual = (Ss * y - out.value * Mv).norm() / Mv.norm();
  return out;
}

}  // namespace

EigenPair min_rayleigh(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M) { return extreme_rayleigh(S, M, false); }
EigenPair max_rayleigh(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M) { return extreme_rayleigh(S, M, true); }
EigenPair min_rayleigh(const QuadraticFormPair& pair) { return extreme_rayleigh(pair.S, pair.M, false); }

ModeScan default_scan(const ShellGeometry& g) {
  const int cap = std::min(512, static_cast<int>(std::ceil(3.0 / std::sqrt(g.h))));
  return {cap, cap};
}

double korn_mode_value(int m, int n, const ShellGeometry& g, const RadialGrid& grid) {
  return min_rayleigh(assemble_mode_forms(m, n, g, grid, FormKind::strain_norm(), FormKind::grad_norm())).value;
}

double component_mode_value(int m, int n, const ShellGeometry& g, const RadialGrid& grid, FormKind kind) {
  const QuadraticFormPair p = assemble_mode_forms(m, n, g, grid, kind, FormKind::strain_norm());
  return max_rayleigh(p.S, p.M).value;
}

namespace {

std::vector<int> coarse_axis(int max) {
  std::set<int> s;
  for (int k = 0; k <= std::min(max, 8); ++k) s.insert(k);
  for (double v = 8.0; v < max; v *= 1.25) s.insert(static_cast<int>(std::lround(v)));
  s.insert(max);
  return {s.begin(), s.end()};
}

// Coarse grid followed by local integer refinement around the incumbent.
template <class Eval>
ScanResult scan_modes(const ModeScan& scan, bool maximize, int jobs, Eval&& eval) {
  std::map<std::pair<int, int>, double> cache;
  auto run = [&](const std::vector<std::pair<int, int>>& pts) {
    std::vector<std::pair<int, int>> todo;
    for (const auto& p : pts)
      if (!cache.count(p)) todo.push_back(p);
    std::vector<double> vals(todo.size());
    parallel_for(todo.size(), jobs, [&](std::size_t i) { vals[i] = eval(todo[i].first, todo[i].second); });
    for (std::size_t i = 0; i < todo.size(); ++i) cache[todo[i]] = vals[i];
  };
  auto best_of = [&] {
    std::pair<int, int> arg{-1, -1};
    double best = 0.0;
    for (const auto& [p, v] : cache)  // lexicographic order: smallest (m, n) wins ties
      if (arg.first < 0 || (maximize ? v > best : v < best)) {
        best = v;
        arg = p;
      }
    return std::make_pair(arg, best);
  };
  const std::vector<int> cm = coarse_axis(scan.m_max), cn = coarse_axis(scan.n_max);
  std::vector<std::pair<int, int>> pts;
  for (int m : cm)
    for (int n : cn) pts.emplace_back(m, n);
  run(pts);
  auto window = [](const std::vector<int>& axis, int v) {
    auto it = std::lower_bound(axis.begin(), axis.end(), v);
    const int lo = it == axis.begin() ? v : *std::prev(it);
    const int hi = (it == axis.end() || std::next(it) == axis.end()) ? v : *std::next(it);
    return std::make_pair(lo, hi);
  };
  auto [arg, best] = best_of();
  {
    const auto [m0, m1] = window(cm, arg.first);
    const auto [n0, n1] = window(cn, arg.second);
    pts.clear();
    for (int m = m0; m <= m1; ++m)
      for (int n = n0; n <= n1; ++n) pts.emplace_back(m, n);
    run(pts);
  }
  for (int iter = 0; iter < 64; ++iter) {
    std::tie(arg, best) = best_of();
    pts.clear();
    for (int dm = -2; dm <= 2; ++dm)
      for (int dn = -2; dn <= 2; ++dn) {
        const int m = arg.first + dm, n = arg.second + dn;
        if (m >= 0 && n >= 0 && m <= scan.m_max && n <= scan.n_max) pts.emplace_back(m, n);
      }
    const std::size_t before = cache.size();
    run(pts);
    if (cache.size() == before) break;
  }
  std::tie(arg, best) = best_of();
  ScanResult res;
  res.value = best;
  res.m = arg.first;
  res.n = arg.second;
  res.m_max = scan.m_max;
  res.n_max = scan.n_max;
  res.on_boundary = arg.first == scan.m_max || arg.second == scan.n_max;
  res.evaluations = static_cast<int>(cache.size());
  return res;
}

ModeScan resolve(const ShellGeometry& g, ModeScan scan) {
  const ModeScan def = default_scan(g);
  if (scan.m_max <= 0) scan.m_max = def.m_max;
  if (scan.n_max <= 0) scan.n_max = def.n_max;
  return scan;
}

}  // namespace

ScanResult korn_constant(const ShellGeometry& g, ModeScan scan, int N, int jobs, RadialScheme scheme) {
  const RadialGrid grid = make_radial_grid(g, N, scheme);
  return scan_modes(resolve(g, scan), false, jobs, [&](int m, int n) { return korn_mode_value(m, n, g, grid); });
}

ScanResult component_bound(const ShellGeometry& g, const std::string& group, ModeScan scan, int N, int jobs) {
  const FormKind kind = component_group(group);
  const RadialGrid grid = make_radial_grid(g, N);
  return scan_modes(resolve(g, scan), true, jobs,
                    [&](int m, int n) { return component_mode_value(m, n, g, grid, kind); });
}

}  // namespace shellbuckle
