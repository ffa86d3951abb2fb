/** @file scaling.hpp
 *  @brief Log-log least-squares power-law fits.
 */
#pragma once

#include <utility>
#include <vector>

namespace shellbuckle {

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double max_residual = 0.0;  // max |log v_i - fitted log v_i|
  int points = 0;
};

/// Fits value = prefactor * h^exponent; needs at least `min_points` distinct positive h.
ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points, int min_points = 4);

}  // namespace shellbuckle
