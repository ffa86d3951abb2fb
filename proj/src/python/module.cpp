#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "cli_runner.hpp"
#include "shellbuckle/ansatz.hpp"
#include "shellbuckle/fixedbc.hpp"
#include "shellbuckle/koiter.hpp"
#include "shellbuckle/korn_spectral.hpp"
#include "shellbuckle/material.hpp"
#include "shellbuckle/rect_korn.hpp"
#include "shellbuckle/scaling.hpp"

namespace py = pybind11;
using namespace shellbuckle;

namespace {

StressWeight stress_by_name(const std::string& name) {
  if (name == "perfect") return perfect_stress();
  if (name == "shear")
    return shear_imperfection([](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
                              [](double) { return 0.0; });
  if (name == "hoop") return hoop_imperfection([](double) { return 1.0; });
  throw ConfigError("unknown stress '" + name + "'");
}

py::dict fit_dict(const ScalingFit& f) {
  py::dict d;
  d["exponent"] = f.exponent;
  d["prefactor"] = f.prefactor;
  d["max_residual"] = f.max_residual;
  d["points"] = f.points;
  return d;
}

py::dict report_dict(const ScalingReport& rep) {
  py::dict out;
  for (const ScalingQuantity& q : rep.quantities) {
    py::list rows;
    for (const ScalingRow& r : q.rows) {
      py::dict row;
      row["h"] = r.h;
      row["value"] = r.value;
      row["normalized"] = r.normalized;
      row["deviation"] = r.deviation;
      rows.append(row);
    }
    py::dict d;
    d["predicted_exponent"] = q.predicted_exponent;
    d["limit"] = q.limit ? py::cast(*q.limit) : py::none();
    d["rows"] = rows;
    d["fit"] = q.fit ? py::object(fit_dict(*q.fit)) : py::none();
    d["excluded_h"] = q.excluded_h;
    out[py::str(q.name)] = d;
  }
  return out;
}

py::dict scan_dict(const ScanResult& s) {
  py::dict d;
  d["value"] = s.value;
  d["m"] = s.m;
  d["n"] = s.n;
  d["on_boundary"] = s.on_boundary;
  d["evaluations"] = s.evaluations;
  d["m_max"] = s.m_max;
  d["n_max"] = s.n_max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shell buckling load and Korn-constant computations.";

  static py::exception<Error> base(m, "ShellbuckleError", PyExc_RuntimeError);
  static py::exception<DomainError> domain(m, "DomainError", base.ptr());
  static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
  static py::exception<SolverError> solver(m, "SolverError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(domain.ptr(), e.what());
    } catch (const ConfigError& e) {
      PyErr_SetString(config.ptr(), e.what());
    } catch (const SolverError& e) {
      PyErr_SetString(solver.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::class_<Material>(m, "Material")
      .def_readonly("E", &Material::E)
      .def_readonly("nu", &Material::nu)
      .def_readonly("mu", &Material::mu)
      .def_readonly("lambda_lame", &Material::lambda_lame)
      .def_readonly("Lambda", &Material::Lambda)
      .def("__repr__", [](const Material& mat) {
        std::ostringstream s;
        s << "Material(E=" << mat.E << ", nu=" << mat.nu << ")";
        return s.str();
      });
  m.def("derive_material", &derive_material, py::arg("E") = 1.0, py::arg("nu") = 0.3);

  py::class_<ShellGeometry>(m, "ShellGeometry")
      .def_readonly("h", &ShellGeometry::h)
      .def_readonly("L", &ShellGeometry::L);
  m.def("make_geometry", &make_geometry, py::arg("h"), py::arg("L") = M_PI);

  m.def(
      "trivial_branch",
      [](double load, double E, double nu) {
        const TrivialBranch t = solve_trivial_branch(derive_material(E, nu), load);
        return py::make_tuple(t.a, t.b);
      },
      py::arg("load"), py::arg("E") = 1.0, py::arg("nu") = 0.3, "Coefficients (a, b) of the trivial branch.");

  m.def("classical_load", &classical_load, py::arg("geometry"), py::arg("material"));
  m.def("max_wavenumber", &max_wavenumber, py::arg("geometry"), py::arg("Lambda"));
  m.def("koiter_circle_n", &koiter_circle_n, py::arg("m"), py::arg("geometry"), py::arg("Lambda"));
  m.def(
      "lambda_star", [](const ShellGeometry& g, const Material& mat, int mm, int n) {
        return lambda_star(g, mat, wave_numbers(mm, n, g.L));
      },
      py::arg("geometry"), py::arg("material"), py::arg("m"), py::arg("n"));
  m.def(
      "minimize_load",
      [](const ShellGeometry& g, const Material& mat, int jobs) {
        const KoiterResult r = minimize_load(g, mat, {}, jobs);
        py::dict d;
        d["lambda_hat"] = r.lambda_hat;
        d["m"] = r.m_star;
        d["n"] = r.n_star;
        d["circle_residual"] = r.circle_residual;
        d["closed_form"] = r.closed_form;
        d["m_max"] = r.m_max;
        d["n_max"] = r.n_max;
        return d;
      },
      py::arg("geometry"), py::arg("material"), py::arg("jobs") = 1);

  m.def(
      "korn_constant",
      [](const ShellGeometry& g, int N, int jobs) { return scan_dict(korn_constant(g, {}, N, jobs)); },
      py::arg("geometry"), py::arg("N") = 12, py::arg("jobs") = 1);
  m.def(
      "component_bound",
      [](const ShellGeometry& g, const std::string& group, int N, int jobs) {
        return scan_dict(component_bound(g, group, {}, N, jobs));
      },
      py::arg("geometry"), py::arg("group"), py::arg("N") = 12, py::arg("jobs") = 1);
  m.def(
      "min_rayleigh",
      [](const Eigen::MatrixXd& S, const Eigen::MatrixXd& M) {
        const EigenPair e = min_rayleigh(S, M);
        return py::make_tuple(e.value, e.vector);
      },
      py::arg("S"), py::arg("M"), "Smallest generalized eigenpair of S v = lambda M v (M positive definite).");

  m.def(
      "ansatz_limits",
      [](const std::vector<double>& h_list, double eta0, double L, int jobs) {
        const double hmin = *std::min_element(h_list.begin(), h_list.end());
        return report_dict(verify_limits(BumpProfile(eta0, L), h_list, make_geometry(hmin, L), jobs));
      },
      py::arg("h_list"), py::arg("eta0") = 1.0, py::arg("L") = M_PI, py::arg("jobs") = 1);
  m.def(
      "compressiveness",
      [](const std::vector<double>& h_list, const std::string& stress, double eta0, double L, double kappa,
         double nu, int jobs) {
        const double hmin = *std::min_element(h_list.begin(), h_list.end());
        return report_dict(compressiveness_scaling(BumpProfile(eta0, L, kappa), h_list, make_geometry(hmin, L),
                                                   derive_material(1.0, nu), stress_by_name(stress), jobs));
      },
      py::arg("h_list"), py::arg("stress") = "perfect", py::arg("eta0") = 1.0, py::arg("L") = M_PI,
      py::arg("kappa") = 0.0, py::arg("nu") = 0.3, py::arg("jobs") = 1);

  m.def(
      "fixedbc_limit",
      [](const std::vector<double>& h_list, double alpha, double L, const std::string& variant, double nu) {
        if (variant != "simplified" && variant != "full") throw ConfigError("unknown variant '" + variant + "'");
        const auto v = variant == "full" ? FixedBCVariant::Full : FixedBCVariant::Simplified;
        py::list rows;
        for (const FixedBCRow& r : fixedbc_limit(h_list, alpha, L, derive_material(1.0, nu), 1.0, 1, v)) {
          py::dict d;
          d["h"] = r.h;
          d["m"] = r.m;
          d["n"] = r.n;
          d["K0"] = r.K0;
          d["ratio"] = r.ratio;
          d["limit_expression"] = r.limit_expression;
          rows.append(d);
        }
        return rows;
      },
      py::arg("h_list"), py::arg("alpha") = 0.25, py::arg("L") = M_PI, py::arg("variant") = "simplified",
      py::arg("nu") = 0.3);

  m.def(
      "rect_korn",
      [](double h, double L, int trials, std::uint64_t seed, int jobs, int mainest_fields) {
        const RectKornSuite s = run_rect_korn(h, L, trials, seed, jobs, mainest_fields);
        py::dict d;
        d["trials"] = s.trials;
        d["violations_basic"] = s.violations_basic;
        d["violations_hi"] = s.violations_hi;
        d["violations_periodic"] = s.violations_periodic;
        d["violations_mainest"] = s.violations_mainest;
        d["min_margin_basic"] = s.min_margin_basic;
        d["min_margin_hi"] = s.min_margin_hi;
        d["extremal_equality_error"] = s.extremal_equality_error;
        d["max_mainest_grad_ratio"] = s.max_mainest_grad_ratio;
        d["max_mainest_u_ratio"] = s.max_mainest_u_ratio;
        return d;
      },
      py::arg("h") = 0.01, py::arg("L") = 1.0, py::arg("trials") = 200, py::arg("seed") = 12345, py::arg("jobs") = 1,
      py::arg("mainest_fields") = 8);

  m.def(
      "fit_exponent",
      [](const std::vector<double>& h, const std::vector<double>& v) {
        if (h.size() != v.size()) throw ConfigError("h and values differ in length");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < h.size(); ++i) pts.emplace_back(h[i], v[i]);
        return fit_dict(fit_exponent(pts));
      },
      py::arg("h"), py::arg("values"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a shellspec command in-process; returns (exit_code, stdout, stderr).");
}
