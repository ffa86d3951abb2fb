/** @file surface_export.hpp
 *  @brief Deformed mid-surface meshes for plotting: OBJ with quad faces plus a CSV twin.
 */
#pragma once

#include <array>
#include <string>
#include <vector>

#include "shellbuckle/cyl_fields.hpp"

namespace shellbuckle {

struct SurfaceGrid {
  int n_theta = 256;  // uniform on [0, 2 pi), faces wrap around
  int n_z = 64;       // uniform on [0, L], both ends included
};

struct SurfaceMesh {
  int n_theta = 0, n_z = 0;
  double L = 0.0, amplitude = 0.0;
  std::vector<std::array<double, 3>> vertices;  // index k * n_theta + j (k along z)
  std::vector<std::array<double, 3>> displacement;  // (u_r, u_theta, u_z) at r = 1

  const std::array<double, 3>& vertex(int j, int k) const {
    return vertices[static_cast<std::size_t>(k) * n_theta + j];
  }
  std::size_t face_count() const { return static_cast<std::size_t>(n_theta) * (n_z - 1); }
};

/// ((1 + a u_r) cos t, (1 + a u_r) sin t, z + a u_z) on r = 1. Requires amplitude > 0.
SurfaceMesh deformed_surface(const DisplacementField& u, double L, double amplitude, SurfaceGrid grid = {});

void write_obj(const SurfaceMesh& mesh, const std::string& path);
/// Columns j, k, theta, z, x, y, zdef, ur, ut, uz.
void write_surface_csv(const SurfaceMesh& mesh, const std::string& path);

/// Writes `path` (OBJ) and the CSV twin with the extension replaced by .csv; returns the twin's path.
std::string export_surface(const SurfaceMesh& mesh, const std::string& path);

}  // namespace shellbuckle
