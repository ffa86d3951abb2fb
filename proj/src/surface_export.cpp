#include "shellbuckle/surface_export.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "shellbuckle/error.hpp"

namespace shellbuckle {

SurfaceMesh deformed_surface(const DisplacementField& u, double L, double amplitude, SurfaceGrid grid) {
  if (!(amplitude > 0.0)) throw DomainError("export: amplitude must be positive");
  if (!(L > 0.0)) throw DomainError("export: L must be positive");
  if (grid.n_theta < 3 || grid.n_z < 2) throw ConfigError("export: need n_theta >= 3 and n_z >= 2");
  SurfaceMesh m;
  m.n_theta = grid.n_theta;
  m.n_z = grid.n_z;
  m.L = L;
  m.amplitude = amplitude;
  const std::size_t n = static_cast<std::size_t>(grid.n_theta) * grid.n_z;
  m.vertices.reserve(n);
  m.displacement.reserve(n);
  for (int k = 0; k < grid.n_z; ++k) {
    const double z = L * k / (grid.n_z - 1);
    for (int j = 0; j < grid.n_theta; ++j) {
      const double t = 2.0 * std::numbers::pi * j / grid.n_theta;
      const FieldJet q = u({1.0, t, z});
      const double rad = 1.0 + amplitude * q.ur.v;
      m.vertices.push_back({rad * std::cos(t), rad * std::sin(t), z + amplitude * q.uz.v});
      m.displacement.push_back({q.ur.v, q.ut.v, q.uz.v});
    }
  }
  return m;
}

namespace {

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream f = open_out(path);
  f << "# deformed mid-surface, " << mesh.n_theta << " x " << mesh.n_z << " vertices, amplitude "
    << num(mesh.amplitude) << "\n";
  for (const auto& v : mesh.vertices) f << "v " << num(v[0]) << ' ' << num(v[1]) << ' ' << num(v[2]) << '\n';
  const auto id = [&](int j, int k) { return static_cast<std::size_t>(k) * mesh.n_theta + (j % mesh.n_theta) + 1; };
  for (int k = 0; k + 1 < mesh.n_z; ++k)
    for (int j = 0; j < mesh.n_theta; ++j)
      f << "f " << id(j, k) << ' ' << id(j + 1, k) << ' ' << id(j + 1, k + 1) << ' ' << id(j, k + 1) << '\n';
  finish(f, path);
}

void write_surface_csv(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream f = open_out(path);
  f << "j,k,theta,z,x,y,zdef,ur,ut,uz\n";
  for (int k = 0; k < mesh.n_z; ++k)
    for (int j = 0; j < mesh.n_theta; ++j) {
      const std::size_t i = static_cast<std::size_t>(k) * mesh.n_theta + j;
      const auto& v = mesh.vertices[i];
      const auto& d = mesh.displacement[i];
      f << j << ',' << k << ',' << num(2.0 * std::numbers::pi * j / mesh.n_theta) << ','
        << num(mesh.L * k / (mesh.n_z - 1)) << ',' << num(v[0]) << ',' << num(v[1]) << ',' << num(v[2]) << ','
        << num(d[0]) << ',' << num(d[1]) << ',' << num(d[2]) << '\n';
    }
  finish(f, path);
}

std::string export_surface(const SurfaceMesh& mesh, const std::string& path) {
  const std::string twin = std::filesystem::path(path).replace_extension(".csv").string();
  if (twin == path) throw ConfigError("export: the OBJ path must not end in .csv");
  write_obj(mesh, path);
  write_surface_csv(mesh, twin);
  return twin;
}

}  // namespace shellbuckle
