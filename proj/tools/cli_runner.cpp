#include "cli_runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>

#include "shellbuckle/ansatz.hpp"
#include "shellbuckle/error.hpp"
#include "shellbuckle/fixedbc.hpp"
#include "shellbuckle/koiter.hpp"
#include "shellbuckle/korn_spectral.hpp"
#include "shellbuckle/material.hpp"
#include "shellbuckle/rect_korn.hpp"
#include "shellbuckle/scaling.hpp"
#include "shellbuckle/surface_export.hpp"

#ifndef SHELLBUCKLE_VERSION
#define SHELLBUCKLE_VERSION "0.0.0"
#endif

namespace shellbuckle::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "shellbuckle " SHELLBUCKLE_VERSION;

struct RunConfig {
  std::string command;
  double h = 0.0;
  std::vector<double> h_list;
  double L = std::numbers::pi;
  double E = 1.0, nu = 0.3;
  double load = 0.0;
  int mmax = 0, nmax = 0, N = 12;
  std::vector<int> m_list{1};
  double amplitude = 0.1;
  int n_theta = 256, n_z = 64;
  std::string export_path;
  double alpha = 0.25, c = 1.0;
  std::string variant = "simplified";
  double eta0 = 1.0;
  std::optional<double> kappa;
  std::string stress = "perfect", study;
  std::string which = "all";
  int trials = 200, mainest_fields = 8;
  std::uint64_t seed = 12345;
  std::string seed_source = "default";
  std::string out_dir, format;
  int jobs = 1;
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  const auto material = [&] {
    j["E"] = c.E;
    j["nu"] = c.nu;
  };
  const auto exporter = [&] {
    j["export"] = c.export_path;
    j["amplitude"] = c.amplitude;
    j["n_theta"] = c.n_theta;
    j["n_z"] = c.n_z;
  };
  if (c.command == "trivial-branch") {
    material();
    j["lambda"] = c.load;
  } else if (c.command == "classical-load") {
    j["h"] = c.h;
    j["L"] = c.L;
    material();
    j["mmax"] = c.mmax;
    j["nmax"] = c.nmax;
  } else if (c.command == "koiter-modes") {
    j["h"] = c.h;
    j["L"] = c.L;
    material();
    j["m"] = c.m_list;
    exporter();
  } else if (c.command == "korn" || c.command == "components") {
    j["h_list"] = c.h_list;
    j["L"] = c.L;
    j["mmax"] = c.mmax;
    j["nmax"] = c.nmax;
    j["N"] = c.N;
    if (c.command == "components") j["which"] = c.which;
  } else if (c.command == "ansatz") {
    j["h_list"] = c.h_list;
    j["L"] = c.L;
    material();
    j["eta0"] = c.eta0;
    j["kappa"] = c.kappa.value_or(0.0);
    j["stress"] = c.stress;
    j["study"] = c.study;
  } else if (c.command == "fixedbc") {
    j["h_list"] = c.h_list;
    j["L"] = c.L;
    material();
    j["alpha"] = c.alpha;
    j["c"] = c.c;
    j["variant"] = c.variant;
    exporter();
  } else if (c.command == "rect-korn") {
    j["h"] = c.h;
    j["L"] = c.L;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["seed_source"] = c.seed_source;
    j["mainest_fields"] = c.mainest_fields;
  }
  j["jobs"] = c.jobs;
  return j;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Result {
  json values = json::object();
  std::optional<Table> table;
  json fit;  // null when the command has no fit
  std::vector<std::string> failures, warnings, files;
  bool sweep = false;  // default output CSV instead of JSON
};

json fit_json(const ScalingFit& f, double predicted) {
  return {{"exponent", f.exponent},
          {"predicted", predicted},
          {"prefactor", f.prefactor},
          {"max_residual", f.max_residual},
          {"points", f.points}};
}

void require_distinct(const std::vector<double>& hs, std::size_t need, const std::string& what) {
  if (hs.empty()) throw ConfigError(what + ": --h-list is empty");
  const std::set<double> d(hs.begin(), hs.end());
  if (d.size() < need)
    throw ConfigError(what + ": the exponent fit needs at least " + std::to_string(need) + " distinct h values");
}

std::string indexed_path(const std::string& path, const std::string& tag, std::size_t i, bool multi) {
  if (!multi) return path;
  fs::path p(path);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + "_" + tag + std::to_string(i) + ext;
}

json write_export(const DisplacementField& u, const RunConfig& c, const std::string& path, Result& r) {
  const SurfaceMesh mesh = deformed_surface(u, c.L, c.amplitude, {c.n_theta, c.n_z});
  const std::string twin = export_surface(mesh, path);
  r.files.push_back(path);
  r.files.push_back(twin);
  return {{"obj", path}, {"csv", twin}, {"vertices", mesh.vertices.size()}, {"faces", mesh.face_count()}};
}

Result cmd_trivial_branch(const RunConfig& c) {
  const Material mat = derive_material(c.E, c.nu);
  const TrivialBranch t = solve_trivial_branch(mat, c.load);
  Result r;
  r.values = {{"lambda", t.load},
              {"a", t.a},
              {"b", t.b},
              {"residual", t.residual},
              {"lambda_limit", trivial_branch_limit(mat)}};
  return r;
}

Result cmd_classical_load(const RunConfig& c) {
  const ShellGeometry g = make_geometry(c.h, c.L);
  const Material mat = derive_material(c.E, c.nu);
  const KoiterResult k = minimize_load(g, mat, {c.mmax, c.nmax}, c.jobs);
  Result r;
  const double excess = k.lambda_hat / k.closed_form - 1.0;
  r.values = {{"lambda_hat", k.lambda_hat},
              {"m", k.m_star},
              {"n", k.n_star},
              {"circle_residual", k.circle_residual},
              {"closed_form", k.closed_form},
              {"relative_excess", excess},
              {"max_wavenumber", max_wavenumber(g, mat.Lambda)},
              {"circle_n_m1", koiter_circle_n(1, g, mat.Lambda)},
              {"m_max", k.m_max},
              {"n_max", k.n_max}};
  if (excess < -1e-12) r.failures.push_back("discrete minimum lies below the continuum minimum");
  return r;
}

Result cmd_koiter_modes(const RunConfig& c) {
  const ShellGeometry g = make_geometry(c.h, c.L);
  const Material mat = derive_material(c.E, c.nu);
  if (c.m_list.empty()) throw ConfigError("koiter-modes: --m is empty");
  const double closed = classical_load(g, mat);
  Result r;
  Table t{{"m", "n", "n_real", "lambda_star", "ratio", "obj"}, {}};
  for (std::size_t i = 0; i < c.m_list.size(); ++i) {
    const int m = c.m_list[i];
    const int n = koiter_circle_n(m, g, mat.Lambda);
    const double lam = lambda_star(g, mat, wave_numbers(m, n, c.L));
    std::string obj;
    if (!c.export_path.empty()) {
      obj = indexed_path(c.export_path, "m", static_cast<std::size_t>(m), c.m_list.size() > 1);
      write_export(buckling_mode(m, g, mat), c, obj, r);
    }
    t.rows.push_back({m, n, koiter_circle_n_real(m, g, mat.Lambda), lam, lam / closed, obj});
  }
  r.values = {{"closed_form", closed}, {"max_wavenumber", max_wavenumber(g, mat.Lambda)}};
  r.table = std::move(t);
  return r;
}

Result cmd_korn(const RunConfig& c) {
  require_distinct(c.h_list, 4, "korn");
  Result r;
  r.sweep = true;
  Table t{{"h", "K", "m", "n", "K_over_h1.5", "drift", "on_boundary"}, {}};
  std::vector<std::pair<double, double>> pts;
  for (double h : c.h_list) {
    const ShellGeometry g = make_geometry(h, c.L);
    const ScanResult s = korn_constant(g, {c.mmax, c.nmax}, c.N, c.jobs);
    const double fine = korn_mode_value(s.m, s.n, g, make_radial_grid(g, 2 * c.N));
    if (s.on_boundary)
      r.warnings.push_back("h = " + std::to_string(h) + ": argmin on the scan boundary, raise --mmax/--nmax");
    t.rows.push_back({h, s.value, s.m, s.n, s.value / std::pow(h, 1.5), std::abs(s.value - fine) / fine, s.on_boundary});
    pts.emplace_back(h, s.value);
  }
  r.fit = fit_json(fit_exponent(pts), 1.5);
  r.table = std::move(t);
  return r;
}

Result cmd_components(const RunConfig& c) {
  require_distinct(c.h_list, 4, "components");
  std::vector<std::string> groups{"tt+zz", "rt+tr", "ur+rz+zr", "tz+zt"};
  if (c.which != "all") groups = {c.which};
  Result r;
  r.sweep = true;
  r.fit = json::object();
  Table t{{"group", "h", "sup", "m", "n", "normalized", "on_boundary"}, {}};
  for (const std::string& grp : groups) {
    const double pred = component_group_exponent(grp);
    std::vector<std::pair<double, double>> pts;
    for (double h : c.h_list) {
      const ShellGeometry g = make_geometry(h, c.L);
      const ScanResult s = component_bound(g, grp, {c.mmax, c.nmax}, c.N, c.jobs);
      if (s.on_boundary) r.warnings.push_back(grp + " at h = " + std::to_string(h) + ": argmax on the scan boundary");
      if (grp == "tt+zz" && s.value > 1.0 + 1e-9)
        r.failures.push_back("tt+zz ratio " + std::to_string(s.value) + " exceeds 1 at h = " + std::to_string(h));
      t.rows.push_back({grp, h, s.value, s.m, s.n, s.value / std::pow(h, pred), s.on_boundary});
      pts.emplace_back(h, s.value);
    }
    r.fit[grp] = fit_json(fit_exponent(pts), pred);
  }
  r.table = std::move(t);
  return r;
}

StressWeight make_stress(const std::string& name) {
  if (name == "perfect") return perfect_stress();
  if (name == "shear")
    return shear_imperfection([](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
                              [](double) { return 0.0; });
  if (name == "hoop") return hoop_imperfection([](double) { return 1.0; });
  throw ConfigError("unknown stress '" + name + "'");
}

Result cmd_ansatz(const RunConfig& c) {
  if (c.h_list.empty()) throw ConfigError("ansatz: --h-list is empty");
  if (c.study != "limits") require_distinct(c.h_list, 4, "ansatz");
  const double kappa = c.kappa.value_or(c.stress == "shear" ? -0.5 : 0.0);
  const BumpProfile bump(c.eta0, c.L, kappa);
  const ShellGeometry g = make_geometry(*std::min_element(c.h_list.begin(), c.h_list.end()), c.L);
  ScalingReport rep;
  if (c.study == "limits") {
    rep = verify_limits(bump, c.h_list, g, c.jobs);
  } else if (c.study == "components") {
    rep = component_scalings(bump, c.h_list, g, c.jobs);
  } else {
    rep = compressiveness_scaling(bump, c.h_list, g, derive_material(c.E, c.nu), make_stress(c.stress), c.jobs);
  }
  Result r;
  r.sweep = true;
  r.fit = json::object();
  Table t{{"quantity", "h", "value", "normalized", "limit", "deviation"}, {}};
  for (const ScalingQuantity& q : rep.quantities) {
    for (const ScalingRow& row : q.rows)
      t.rows.push_back({q.name, row.h, row.value, row.normalized, q.limit ? json(*q.limit) : json(nullptr),
                        q.limit ? json(row.deviation) : json(nullptr)});
    if (q.fit) {
      json f = fit_json(*q.fit, q.predicted_exponent);
      f["excluded_h"] = q.excluded_h;
      r.fit[q.name] = f;
    }
    for (double h : q.excluded_h)
      r.warnings.push_back(q.name + ": h = " + std::to_string(h) + " excluded (C <= 0)");
  }
  if (r.fit.empty()) r.fit = nullptr;
  r.table = std::move(t);
  return r;
}

Result cmd_fixedbc(const RunConfig& c) {
  if (c.h_list.empty()) throw ConfigError("fixedbc: --h-list is empty");
  const Material mat = derive_material(c.E, c.nu);
  const FixedBCVariant v = c.variant == "full" ? FixedBCVariant::Full : FixedBCVariant::Simplified;
  const std::vector<FixedBCRow> rows = fixedbc_limit(c.h_list, c.alpha, c.L, mat, c.c, c.jobs, v);
  Result r;
  r.sweep = true;
  Table t{{"h", "m", "n", "K0", "ratio", "limit_expression"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const FixedBCRow& row = rows[i];
    t.rows.push_back({row.h, row.m, row.n, row.K0, row.ratio, row.limit_expression});
    if (row.ratio < 1.0 - 1e-12)
      r.failures.push_back("ratio below 1 at h = " + std::to_string(row.h) + " (mode beats the classical load)");
    if (!c.export_path.empty()) {
      const ShellGeometry g = make_geometry(row.h, c.L);
      const FixedBCMode md = fixedbc_mode(row.m, g, mat, row.n, v);
      write_export(md.field, c, indexed_path(c.export_path, "h", i, rows.size() > 1), r);
    }
  }
  r.table = std::move(t);
  return r;
}

Result cmd_rect_korn(const RunConfig& c) {
  const RectKornSuite s = run_rect_korn(c.h, c.L, c.trials, c.seed, c.jobs, c.mainest_fields);
  const int total = s.violations_basic + s.violations_hi + s.violations_periodic + s.violations_mainest;
  Result r;
  r.values = {{"violations", total},
              {"violations_basic", s.violations_basic},
              {"violations_hi", s.violations_hi},
              {"violations_periodic", s.violations_periodic},
              {"violations_mainest", s.violations_mainest},
              {"min_margin", s.min_margin_basic},
              {"min_margin_hi", s.min_margin_hi},
              {"extremal_equality_error", s.extremal_equality_error},
              {"max_ratio_periodic_alpha", s.max_ratio_periodic_alpha},
              {"max_ratio_periodic_star", s.max_ratio_periodic_star},
              {"periodic_C0", kPeriodicC0},
              {"periodic_sigma", kPeriodicSigma},
              {"mainest_fields", s.mainest_fields},
              {"max_mainest_grad_ratio", s.max_mainest_grad_ratio},
              {"max_mainest_u_ratio", s.max_mainest_u_ratio},
              {"trials", s.trials}};
  if (total > 0) r.failures.push_back(std::to_string(total) + " inequality violations");
  return r;
}

Result dispatch(const RunConfig& c) {
  if (c.command == "trivial-branch") return cmd_trivial_branch(c);
  if (c.command == "classical-load") return cmd_classical_load(c);
  if (c.command == "koiter-modes") return cmd_koiter_modes(c);
  if (c.command == "korn") return cmd_korn(c);
  if (c.command == "components") return cmd_components(c);
  if (c.command == "ansatz") return cmd_ansatz(c);
  if (c.command == "fixedbc") return cmd_fixedbc(c);
  if (c.command == "rect-korn") return cmd_rect_korn(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_structured()) return csv_cell(json(v.dump()));
  return v.dump();
}

std::string render_csv(const json& config, const Result& r) {
  std::string s = "# config " + config.dump() + "\n";
  if (r.table) {
    for (std::size_t i = 0; i < r.table->columns.size(); ++i) s += (i ? "," : "") + r.table->columns[i];
    s += "\n";
    for (const auto& row : r.table->rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
      s += "\n";
    }
    if (!r.values.empty()) {
      for (const auto& [k, v] : r.values.items()) s += "# " + k + " " + csv_cell(v) + "\n";
    }
  } else {
    s += "key,value\n";
    for (const auto& [k, v] : r.values.items()) s += k + "," + csv_cell(v) + "\n";
  }
  return s;
}

json render_json(const json& config, const Result& r) {
  json doc;
  doc["command"] = config["command"];
  doc["config"] = config;
  for (const auto& [k, v] : r.values.items()) doc[k] = v;
  if (r.table) {
    json rows = json::array();
    for (const auto& row : r.table->rows) {
      json o;
      for (std::size_t i = 0; i < row.size(); ++i) o[r.table->columns[i]] = row[i];
      rows.push_back(o);
    }
    doc["rows"] = rows;
  }
  if (!r.fit.is_null()) doc["fit"] = r.fit;
  return doc;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("write to '" + p.string() + "' failed");
}

std::size_t manifest_entries(const fs::path& manifest) {
  std::ifstream f(manifest);
  std::size_t n = 0;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) ++n;
  return n;
}

std::string slug(const std::string& command, std::size_t run) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%04zu", run);
  return command + buf;
}

void add_material(CLI::App* s, RunConfig& c) {
  s->add_option("--E", c.E, "Young modulus")->capture_default_str();
  s->add_option("--nu", c.nu, "Poisson ratio in (0, 1/2)")->capture_default_str();
}

void add_export(CLI::App* s, RunConfig& c) {
  s->add_option("--export", c.export_path, "OBJ path for the deformed mid-surface (CSV twin alongside)");
  s->add_option("--amplitude", c.amplitude, "plot amplitude of the displacement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--n-theta", c.n_theta, "export vertices around the circumference")->capture_default_str();
  s->add_option("--n-z", c.n_z, "export vertices along the axis")->capture_default_str();
}

void add_scan(CLI::App* s, RunConfig& c) {
  s->add_option("--h-list", c.h_list, "comma-separated thicknesses")->delimiter(',')->required();
  s->add_option("--L", c.L, "cylinder length")->capture_default_str();
  s->add_option("--mmax", c.mmax, "axial scan cap (0: automatic)")->capture_default_str();
  s->add_option("--nmax", c.nmax, "circumferential scan cap (0: automatic)")->capture_default_str();
  s->add_option("--N", c.N, "radial basis size")->check(CLI::Range(2, 256))->capture_default_str();
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Config:
    case ErrorKind::Capability:
      return kUsage;
    case ErrorKind::Solver:
      return kSolverFailure;
    case ErrorKind::Check:
      return kCheckFailure;
    case ErrorKind::Io:
      return kIoFailure;
  }
  return kIoFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c;
  CLI::App app{"Buckling and Korn-inequality numerics for thin cylindrical shells", "shellspec"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--out", c.out_dir, "directory for artifacts and manifest.jsonl");
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", c.format, "output format (default: json for single results, csv for sweeps)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* tb = app.add_subcommand("trivial-branch", "homogeneous compressed equilibrium");
  add_material(tb, c);
  tb->add_option("--lambda", c.load, "load")->required();

  CLI::App* cl = app.add_subcommand("classical-load", "integer minimum of the buckling-load surface");
  cl->add_option("--h", c.h, "thickness")->required();
  cl->add_option("--L", c.L, "cylinder length")->capture_default_str();
  add_material(cl, c);
  cl->add_option("--mmax", c.mmax, "axial search cap (0: 2 M(h))")->capture_default_str();
  cl->add_option("--nmax", c.nmax, "circumferential search cap (0: automatic)")->capture_default_str();

  CLI::App* km = app.add_subcommand("koiter-modes", "buckling modes on the Koiter circle");
  km->add_option("--h", c.h, "thickness")->required();
  km->add_option("--L", c.L, "cylinder length")->capture_default_str();
  add_material(km, c);
  km->add_option("--m", c.m_list, "axial orders")->delimiter(',')->capture_default_str();
  add_export(km, c);

  CLI::App* ko = app.add_subcommand("korn", "Korn constant sweep and exponent fit");
  add_scan(ko, c);

  CLI::App* co = app.add_subcommand("components", "gradient-component bounds and exponent fits");
  add_scan(co, c);
  co->add_option("--which", c.which, "group")
      ->check(CLI::IsMember({"all", "tt+zz", "rt+tr", "ur+rz+zr", "tz+zt"}))
      ->capture_default_str();

  CLI::App* an = app.add_subcommand("ansatz", "compressed-bump ansatz: limits, components, compressiveness");
  an->add_option("--h-list", c.h_list, "comma-separated thicknesses")->delimiter(',')->required();
  an->add_option("--eta0", c.eta0, "bump half-width in (0, pi)")->capture_default_str();
  an->add_option("--L", c.L, "cylinder length")->capture_default_str();
  add_material(an, c);
  CLI::Option* stress_opt =
      an->add_option("--stress", c.stress, "stress weight")->check(CLI::IsMember({"perfect", "shear", "hoop"}));
  an->add_option("--study", c.study, "limits | components | compressiveness (default: compressiveness with --stress)")
      ->check(CLI::IsMember({"limits", "components", "compressiveness"}));
  an->add_option("--kappa", c.kappa, "bump skew (default -0.5 for shear, else 0)");

  CLI::App* fb = app.add_subcommand("fixedbc", "clamped-bottom two-mode fields against the classical load");
  fb->add_option("--h-list", c.h_list, "comma-separated thicknesses")->delimiter(',')->required();
  fb->add_option("--alpha", c.alpha, "m(h) = round(c h^-alpha), alpha in (0, 1/2)")->capture_default_str();
  fb->add_option("--c", c.c, "prefactor of m(h)")->capture_default_str();
  fb->add_option("--L", c.L, "cylinder length")->capture_default_str();
  add_material(fb, c);
  fb->add_option("--variant", c.variant, "mode construction")
      ->check(CLI::IsMember({"simplified", "full"}))
      ->capture_default_str();
  add_export(fb, c);

  CLI::App* rk = app.add_subcommand("rect-korn", "seeded checks of the thin-rectangle inequalities");
  rk->add_option("--h", c.h, "rectangle width in (0, 1)")->capture_default_str();
  rk->add_option("--L", c.L, "rectangle length")->capture_default_str();
  rk->add_option("--trials", c.trials, "random trials")->check(CLI::NonNegativeNumber)->capture_default_str();
  rk->add_option("--seed", c.seed, "seed (SHELLSPEC_SEED overrides)")->capture_default_str();
  rk->add_option("--mainest-fields", c.mainest_fields, "trials that also run the harmonic projection")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  for (CLI::App* s : {tb, cl, km, ko, co, an, fb, rk}) s->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "rect-korn") {
    if (!rk->count("--h")) c.h = 0.01;
    if (!rk->count("--L")) c.L = 1.0;
    if (rk->count("--seed")) c.seed_source = "flag";
    if (const char* env = std::getenv("SHELLSPEC_SEED")) {
      try {
        std::size_t used = 0;
        const std::string s(env);
        c.seed = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        c.seed_source = "env";
      } catch (const std::exception&) {
        err << "error: SHELLSPEC_SEED='" << env << "' is not an unsigned integer\n";
        return kUsage;
      }
    }
  }
  if (c.command == "ansatz" && c.study.empty()) c.study = stress_opt->count() ? "compressiveness" : "limits";
  if (c.command == "ansatz" && c.study == "limits" && stress_opt->count())
    err << "warning: --stress has no effect on the limits study\n";

  const json config = config_json(c);
  int code = kOk;
  std::string message;
  Result r;
  try {
    r = dispatch(c);
  } catch (const Error& e) {
    code = exit_code(e.kind());
    message = e.what();
  } catch (const std::exception& e) {
    code = kSolverFailure;
    message = e.what();
  }
  if (code != kOk) {
    err << "error: " << message << "\n";
    return code;
  }

  for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
  const bool csv = c.format.empty() ? r.sweep : c.format == "csv";
  const std::string body = csv ? render_csv(config, r) : render_json(config, r).dump(2) + "\n";
  out << body;
  if (csv && !r.fit.is_null()) out << "# fit " << r.fit.dump() << "\n";

  if (!r.failures.empty()) code = kCheckFailure;
  if (!c.out_dir.empty()) {
    try {
      const fs::path dir(c.out_dir);
      fs::create_directories(dir);
      const fs::path manifest = dir / "manifest.jsonl";
      const std::size_t run_id = manifest_entries(manifest);
      const std::string stem = slug(c.command, run_id);
      std::vector<std::string> outputs;
      const fs::path main = dir / (stem + (csv ? ".csv" : ".json"));
      write_file(main, body);
      outputs.push_back(main.string());
      if (csv && !r.fit.is_null()) {
        const fs::path fit = dir / (stem + "_fit.json");
        write_file(fit, json{{"config", config}, {"fit", r.fit}}.dump(2) + "\n");
        outputs.push_back(fit.string());
      }
      for (const std::string& f : r.files) outputs.push_back(f);
      json entry;
      entry["run"] = run_id;
      entry["command"] = c.command;
      entry["config"] = config;
      entry["outputs"] = outputs;
      entry["results"] = r.values;
      if (!r.fit.is_null()) entry["fit"] = r.fit;
      entry["failures"] = r.failures;
      entry["exit_code"] = code;
      entry["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      entry["version"] = kVersion;
      std::ofstream m(manifest, std::ios::app);
      if (!m) throw IoError("cannot append to '" + manifest.string() + "'");
      m << entry.dump() << "\n";
      if (!m) throw IoError("append to '" + manifest.string() + "' failed");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kIoFailure;
    }
  }
  for (const std::string& f : r.failures) err << "check failed: " << f << "\n";
  return code;
}

}  // namespace shellbuckle::cli
