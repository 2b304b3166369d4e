#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "grid_function.hpp"

namespace lorlab {

/// Nonincreasing rearrangement of |f| as a finite step function: value v_i on
/// (t_{i-1}, t_i] with t_0 = 0 implicit, values strictly decreasing after
/// merging ties, breakpoints strictly increasing.  Zero values are dropped, so
/// the last breakpoint is the measure of the support.
struct StepRearrangement {
  struct Step {
    double value;
    double right_breakpoint;
  };
  std::vector<Step> steps;

  bool empty() const { return steps.empty(); }
  double support_measure() const { return steps.empty() ? 0.0 : steps.back().right_breakpoint; }
  double top_value() const { return steps.empty() ? 0.0 : steps.front().value; }

  /// f*(t); right-continuous inverse convention, 0 beyond the support.
  double value_at(double t) const {
    for (const auto& s : steps)
      if (t < s.right_breakpoint) return s.value;
    return 0.0;
  }

  void validate() const {
    double prev_v = std::numeric_limits<double>::infinity();
    double prev_t = 0.0;
    for (const auto& s : steps) {
      if (!(s.value > 0.0) || !(s.value < prev_v))
        throw std::invalid_argument("StepRearrangement: values must be strictly decreasing and positive");
      if (!(s.right_breakpoint > prev_t))
        throw std::invalid_argument("StepRearrangement: breakpoints must be strictly increasing");
      prev_v = s.value;
      prev_t = s.right_breakpoint;
    }
  }
};

/// Rearrangement from (value, mass) pairs in arbitrary order; ties merged.
inline StepRearrangement make_rearrangement(std::vector<std::pair<double, double>> value_mass) {
  for (const auto& [v, m] : value_mass) {
    if (v < 0.0) throw std::invalid_argument("make_rearrangement: negative value");
    if (!(m > 0.0)) throw std::invalid_argument("make_rearrangement: nonpositive mass");
  }
  std::sort(value_mass.begin(), value_mass.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  StepRearrangement r;
  double t = 0.0;
  for (const auto& [v, m] : value_mass) {
    if (v == 0.0) continue;
    t += m;
    if (!r.steps.empty() && r.steps.back().value == v)
      r.steps.back().right_breakpoint = t;
    else
      r.steps.push_back({v, t});
  }
  return r;
}

/// Exact nonincreasing rearrangement of |f|: sorted moduli descending, equal
/// values merged, each sample contributing one cell of mass.
inline StepRearrangement rearrange(const GridFunction& f) {
  if (f.samples.empty()) throw std::invalid_argument("rearrange: empty domain");
  std::vector<double> mod = f.moduli();
  std::sort(mod.begin(), mod.end(), std::greater<double>());
  StepRearrangement r;
  std::size_t i = 0;
  while (i < mod.size() && mod[i] > 0.0) {
    std::size_t j = i + 1;
    while (j < mod.size() && mod[j] == mod[i]) ++j;
    r.steps.push_back({mod[i], static_cast<double>(j) * f.cell_mass});
    i = j;
  }
  return r;
}

/// Distribution function: mu(|f| > alpha), a right-continuous nonincreasing
/// step function of alpha.
inline double distribution(const GridFunction& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("distribution: alpha must be nonnegative");
  std::size_t count = 0;
  for (const auto& v : f.samples)
    if (std::abs(v) > alpha) ++count;
  return static_cast<double>(count) * f.cell_mass;
}

}  // namespace lorlab
