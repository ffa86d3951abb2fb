// Acceptance run: one PASS/FAIL line per criterion, supplementary INFO lines where a criterion
// is judged on the specified construction but a variant is also of interest.
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "oracles.hpp"
#include "shellbuckle/cyl_fields.hpp"
#include "shellbuckle/koiter.hpp"
#include "shellbuckle/korn_spectral.hpp"
#include "shellbuckle/scaling.hpp"

using namespace shellbuckle;
using json = nlohmann::json;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> info;
};

json cli(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) throw std::runtime_error("exit " + std::to_string(code) + ": " + err.str());
  return json::parse(out.str());
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::string kHList5 = "1e-2,0.00316227766016838,1e-3,0.000316227766016838,1e-4";

std::string fourth_powers(std::initializer_list<int> ns) {
  std::string s;
  for (int n : ns) {
    s += (s.empty() ? "" : ",") + fmt("%.17g", std::pow(static_cast<double>(n), -4.0));
  }
  return s;
}

Outcome c1() {
  const json j = cli({"classical-load", "--h", "1e-4", "--L", "3.14159265", "--E", "1", "--nu", "0.3"});
  const double cf = j["closed_form"], ex = j["relative_excess"];
  const bool cf_ok = std::abs(cf / 7.022e-5 - 1.0) <= 5e-4;
  return {ex >= 0.0 && ex <= 0.02 && cf_ok,
          "lambda_hat/closed_form - 1 = " + fmt("%.3e", ex) + " in [0, 0.02]; closed_form = " + fmt("%.5e", cf) +
              " (7.022e-5)"};
}

Outcome c2() {
  const Material mat = derive_material(1.0, 0.3);
  const ShellGeometry g = make_geometry(1e-4, pi);
  const KoiterResult r = minimize_load(g, mat);
  const int M = max_wavenumber(g, mat.Lambda), n1 = koiter_circle_n(1, g, mat.Lambda);
  const int nm = koiter_circle_n(r.m_star, g, mat.Lambda);
  const bool family = r.n_star == nm || r.n_star == nm + 1;
  return {r.circle_residual <= 0.05 && M == 176 && n1 == 13 && family,
          "circle residual " + fmt("%.3e", r.circle_residual) + " <= 0.05; n(1) = " + std::to_string(n1) +
              " (13); M(h) = " + std::to_string(M) + " (176); argmin (" + std::to_string(r.m_star) + ", " +
              std::to_string(r.n_star) + ") with n(m*) = " + std::to_string(nm)};
}

Outcome c3() {
  const json j = cli({"korn", "--h-list", kHList5, "--L", "3.14159265358979"});
  const double e = j["fit"]["exponent"];
  double drift = 0.0;
  for (const auto& row : j["rows"]) drift = std::max(drift, row["drift"].get<double>());
  return {e >= 1.35 && e <= 1.65 && drift < 0.01,
          "exponent " + fmt("%.4f", e) + " in [1.35, 1.65]; max refinement drift " + fmt("%.2e", drift) + " < 1%"};
}

Outcome c4() {
  const json j = cli({"components", "--h-list", kHList5});
  bool ok = true;
  std::string d;
  for (const auto& [grp, f] : j["fit"].items()) {
    const double e = f["exponent"], p = f["predicted"];
    ok = ok && std::abs(e - p) <= 0.15;
    d += grp + " " + fmt("%.3f", e) + " (" + fmt("%g", p) + "); ";
  }
  double tt = 0.0;
  for (const auto& row : j["rows"])
    if (row["group"] == "tt+zz") tt = std::max(tt, row["sup"].get<double>());
  ok = ok && tt <= 1.0 + 1e-9;
  return {ok, d + "max tt+zz ratio " + fmt("%.12f", tt) + " <= 1"};
}

Outcome c5() {
  const json j = cli({"ansatz", "--h-list", fourth_powers({3, 5, 10}), "--eta0", "1", "--study", "limits"});
  std::map<std::string, std::vector<double>> dev;
  for (const auto& row : j["rows"]) dev[row["quantity"]].push_back(std::abs(row["deviation"].get<double>()));
  const auto monotone = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] < v[i - 1])) return false;
    return true;
  };
  const double g = dev["grad"].back(), s = dev["strain"].back(), gc = dev["grad_corrected"].back();
  Outcome o;
  o.pass = g <= 0.05 && s <= 0.05 && monotone(dev["grad"]) && monotone(dev["strain"]);
  o.detail = "at h = 1e-4: gradient deviation " + fmt("%.4f", g) + ", strain deviation " + fmt("%.2e", s) +
             " (<= 0.05); monotone " + (monotone(dev["grad"]) ? "yes" : "no") + "/" +
             (monotone(dev["strain"]) ? "yes" : "no");
  o.info.push_back("gradient against twice ||phi_eee||^2: deviation " + fmt("%.2e", gc) + ", monotone " +
                   (monotone(dev["grad_corrected"]) ? "yes" : "no") + " (see ledger)");
  return o;
}

Outcome c6() {
  const std::string hl = fourth_powers({3, 4, 5, 6, 8, 10});
  struct Case {
    const char* stress;
    double lo, hi;
  };
  bool ok = true;
  std::string d;
  for (const Case& c : {Case{"perfect", 0.9, 1.1}, Case{"shear", 1.1, 1.4}, Case{"hoop", 1.35, 1.65}}) {
    const json j = cli({"ansatz", "--h-list", hl, "--stress", c.stress});
    const double e = j["fit"]["ratio"]["exponent"];
    ok = ok && e >= c.lo && e <= c.hi;
    d += std::string(c.stress) + " " + fmt("%.3f", e) + " in [" + fmt("%g", c.lo) + ", " + fmt("%g", c.hi) + "]; ";
  }
  return {ok, d.substr(0, d.size() - 2)};
}

Outcome c7() {
  const json s = cli({"fixedbc", "--h-list", "1e-4,1e-6", "--alpha", "0.25"});
  const double r4 = s["rows"][0]["ratio"], r6 = s["rows"][1]["ratio"];
  Outcome o;
  o.pass = std::abs(r4 - 1.034) <= 0.01 && r6 <= 1.01;
  o.detail = "simplified modes: ratio " + fmt("%.6f", r4) + " at 1e-4 (1.034 +- 0.01), " + fmt("%.6f", r6) +
             " at 1e-6 (<= 1.01)";
  const json f = cli({"fixedbc", "--h-list", "1e-4,1e-6", "--alpha", "0.25", "--variant", "full"});
  const double f4 = f["rows"][0]["ratio"], f6 = f["rows"][1]["ratio"];
  o.info.push_back("full variant: ratio " + fmt("%.6f", f4) + " at 1e-4 (" +
                   (std::abs(f4 - 1.034) <= 0.01 ? "within" : "outside") + " 1.034 +- 0.01), " + fmt("%.6f", f6) +
                   " at 1e-6 (" + (f6 <= 1.01 ? "<=" : ">") + " 1.01)");
  o.info.push_back("limit expression at m = 10: " + fmt("%.6f", s["rows"][0]["limit_expression"].get<double>()));
  return o;
}

Outcome c8() {
  const Material mat = derive_material(1.0, 0.3);
  std::vector<std::pair<double, double>> pts;
  double rel4 = 0.0;
  for (double e : {2.0, 2.5, 3.0, 3.5, 4.0}) {
    const double h = std::pow(10.0, -e);
    const ShellGeometry g = make_geometry(h, pi);
    const KoiterResult k = minimize_load(g, mat);
    const int n = koiter_circle_n(k.m_star, g, mat.Lambda);
    const FunctionalFamily f = functional_family(buckling_mode(k.m_star, g, mat), mat, g, make_mode_grid(g, k.m_star, n));
    pts.emplace_back(h, std::abs(1.0 / f.K0 - 1.0 / f.K1) * f.K1);
    if (e == 4.0) rel4 = std::abs(*f.Kstar - f.K0) / f.K0;
  }
  const double ex = fit_exponent(pts).exponent;
  return {ex >= 0.2 && rel4 <= 0.1, "|1/K0 - 1/K1| K1 exponent " + fmt("%.3f", ex) +
                                        " >= 0.2; |K* - K0|/K0 at h = 1e-4: " + fmt("%.2e", rel4) + " <= 0.1"};
}

Outcome c9() {
  const json j = cli({"rect-korn", "--h", "0.01", "--L", "1", "--trials", "200", "--seed", "12345"});
  const int vb = j["violations_basic"], vh = j["violations_hi"], vm = j["violations_mainest"];
  const double eq = j["extremal_equality_error"];
  return {vb == 0 && vh == 0 && vm == 0 && eq <= 1e-8,
          "violations: basic " + std::to_string(vb) + ", harmonic " + std::to_string(vh) + ", projection " +
              std::to_string(vm) + " of " + std::to_string(j["mainest_fields"].get<int>()) +
              "; extremal equality error " + fmt("%.2e", eq) + " <= 1e-8; max projection ratio " +
              fmt("%.3f", std::max(j["max_mainest_grad_ratio"].get<double>(), j["max_mainest_u_ratio"].get<double>())) +
              " <= 1.05"};
}

Outcome c10() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> um(0.2, 3.0), ul(0.0, 4.0);
  std::uniform_int_distribution<int> un(0, 15);
  double worst_t = 0.0;
  for (int k = 0; k < 20; ++k) {
    const WaveNumbers wn{1, un(rng), um(rng)};
    const double Lam = ul(rng);
    const auto [ft, fz] = optimal_tangential(1.0, wn, Lam);
    const auto [bb, cb] = oracles::brute_tangential(wn, Lam);
    worst_t = std::max({worst_t, std::abs(ft.imag() - bb) / (1.0 + std::abs(bb)),
                        std::abs(fz.real() - cb) / (1.0 + std::abs(cb))});
  }
  std::normal_distribution<double> nd;
  double worst_e = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 3 + k % 8;
    Eigen::MatrixXd A(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = nd(rng), B(i, j) = nd(rng);
    const Eigen::MatrixXd S = A * A.transpose();
    const Eigen::MatrixXd M = B * B.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    const double ref = oracles::bisection_min_eig(S, M);
    worst_e = std::max(worst_e, std::abs(min_rayleigh(S, M).value - ref) / (1.0 + std::abs(ref)));
  }
  return {worst_t <= 1e-6 && worst_e <= 1e-8, "tangential vs brute force " + fmt("%.2e", worst_t) +
                                                  " <= 1e-6; min_rayleigh vs bisection " + fmt("%.2e", worst_e) +
                                                  " <= 1e-8"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "classical load", 30, c1},         {2, "Koiter circle", 30, c2},
      {3, "Korn exponent", 600, c3},         {4, "component exponents", 600, c4},
      {5, "ansatz limits", 120, c5},         {6, "imperfection scaling", 300, c6},
      {7, "fixed-bottom modes", 120, c7},    {8, "functional equivalence", 120, c8},
      {9, "rectangle inequalities", 120, c9}, {10, "oracle equivalences", 60, c10},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), {}};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && dt <= c.budget_s;
    if (!pass) ++failed;
    std::printf("%s %2d %-24s %s | %.2f s (<= %g s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), dt,
                c.budget_s);
    for (const std::string& s : o.info) std::printf("INFO %2d %-24s %s\n", c.id, "", s.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
