#pragma once

#include <cmath>
#include <random>

#include "lorlab/grid_function.hpp"

namespace testutil {

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) <= tol * scale;
}

/// Random complex grid function; values span several decades, and with
/// probability ~1/3 the moduli are quantized so equal-value ties occur.
inline lorlab::GridFunction random_grid_function(std::uint64_t seed, std::size_t len = 0,
                                                 double cell_mass = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (len == 0) len = std::size_t{1} << (3 + static_cast<int>(unit(rng) * 7));
  if (cell_mass == 0.0) cell_mass = std::pow(10.0, -2.0 + 4.0 * unit(rng));
  lorlab::GridFunction g = lorlab::GridFunction::zeros(len, cell_mass);
  const bool quantize = unit(rng) < 0.34;
  const bool sparse = unit(rng) < 0.3;
  for (auto& v : g.samples) {
    if (sparse && unit(rng) < 0.5) continue;
    double mag = std::pow(10.0, -3.0 + 6.0 * unit(rng));
    if (quantize) mag = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(mag) * 2.0)) / 2);
    const double phase = 2.0 * M_PI * unit(rng);
    v = lorlab::cplx{mag * std::cos(phase), mag * std::sin(phase)};
  }
  return g;
}

}  // namespace testutil
