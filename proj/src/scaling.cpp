#include "shellbuckle/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "shellbuckle/error.hpp"

namespace shellbuckle {

ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points, int min_points) {
  if (static_cast<int>(points.size()) < min_points)
    throw ConfigError("fit_exponent: need at least " + std::to_string(min_points) + " points, got " +
                      std::to_string(points.size()));
  std::set<double> hs;
  for (const auto& [h, v] : points) {
    if (!(h > 0.0) || !(v > 0.0)) throw DomainError("fit_exponent: h and values must be positive");
    hs.insert(h);
  }
  if (hs.size() != points.size()) throw ConfigError("fit_exponent: h values must be distinct");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, v] : points) {
    const double x = std::log(h), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingFit fit;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.prefactor = std::exp(intercept);
  for (const auto& [h, v] : points)
    fit.max_residual = std::max(fit.max_residual, std::abs(std::log(v) - intercept - fit.exponent * std::log(h)));
  fit.points = static_cast<int>(points.size());
  return fit;
}

}  // namespace shellbuckle
