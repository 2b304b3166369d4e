#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lorentz.hpp"
#include "parallel.hpp"

namespace lorlab {

/// Lorentz norm from unsorted (value, mass) pairs; equal values need not be
/// merged (the telescoping sum is exact either way).
inline double lorentz_norm_value_mass(std::vector<std::pair<double, double>> vm,
                                      const LorentzExponents& e) {
  std::sort(vm.begin(), vm.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (e.r_infinite()) {
    double t = 0.0, best = 0.0;
    for (const auto& [v, m] : vm) {
      if (v <= 0.0) break;
      t += m;
      best = std::max(best, v * std::pow(t, 1.0 / e.p));
    }
    return best;
  }
  const double rp = e.r / e.p;
  double t = 0.0, acc = 0.0;
  for (const auto& [v, m] : vm) {
    if (v <= 0.0) break;
    const double t1 = t + m;
    acc += std::pow(v, e.r) * detail::pow_diff(t1, t, rp);
    t = t1;
  }
  return std::pow(acc, 1.0 / e.r);
}

/// Appendix bound on the p-power triangle constant with the non-constructive
/// absolute factor A^{1/p} stripped:
///   (1/(1-p))^{1/p-1/r} (1 + (p/r) log(1/(1-p)))^{1/p-1/r},  0 < p < 1 < ...
/// r = inf degenerates to (1/(1-p))^{1/p}.
inline double bound_modulo_A(double p, double r) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bound_modulo_A: need 0 < p < 1");
  if (!(r > p)) throw std::domain_error("bound_modulo_A: need r > p");
  const double log_term = std::log(1.0 / (1.0 - p));
  if (std::isinf(r)) return std::pow(1.0 / (1.0 - p), 1.0 / p);
  const double expo = 1.0 / p - 1.0 / r;
  return std::pow(1.0 / (1.0 - p), expo) * std::pow(1.0 + (p / r) * log_term, expo);
}

/// Stein-Taibleson-Weiss cap ((2-p)/(1-p))^{1/p} for the same inequality.
inline double stw_bound(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("stw_bound: need 0 < p < 1");
  return std::pow((2.0 - p) / (1.0 - p), 1.0 / p);
}

/// Barza-Kolyada-Soria sharp constant (p/r)^{1/r} (p'/r')^{1/r'} for the
/// plain triangle inequality with 1 < p < r; r = inf gives the limit p'.
inline double bks_constant(double p, double r) {
  if (!(p > 1.0)) throw std::domain_error("bks_constant: need p > 1");
  if (!(r > p)) throw std::domain_error("bks_constant: need r > p");
  const double pp = p / (p - 1.0);
  if (std::isinf(r)) return pp;
  const double rr = r / (r - 1.0);
  return std::pow(p / r, 1.0 / r) * std::pow(pp / rr, 1.0 / rr);
}

// --- empirical worst-case search ---------------------------------------------

/// One candidate family: K step functions on the half line, each a stack of
/// layers (value v on [left, left+width)).
struct StepFamily {
  struct Layer {
    double value;
    double left;
    double width;
  };
  std::vector<std::vector<Layer>> fns;

  std::string descriptor() const {
    std::size_t layers = 0;
    for (const auto& f : fns) layers += f.size();
    std::ostringstream os;
    os << fns.size() << " functions, " << layers << " layers";
    return os.str();
  }
};

/// Ratio ||sum f_k|| / denominator where the denominator is
/// (sum ||f_k||^p)^{1/p} for p < 1 and the plain sum of norms for p >= 1.
/// Each function is evaluated on its own breakpoints; the sum is accumulated
/// on the merged partition through a difference array, so the cost stays
/// near-linear in the layer count.
inline double family_ratio(const StepFamily& fam, const LorentzExponents& e) {
  if (fam.fns.empty()) return 0.0;
  std::vector<double> xs;
  xs.reserve(2 * fam.fns.size());
  for (const auto& f : fam.fns) {
    for (const auto& l : f) {
      if (!(l.value > 0.0) || !(l.width > 0.0) || l.left < 0.0 || !std::isfinite(l.value) ||
          !std::isfinite(l.left + l.width))
        return 0.0;
      xs.push_back(l.left);
      xs.push_back(l.left + l.width);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::size_t cells = xs.size() - 1;

  std::vector<double> sum_diff(cells + 1, 0.0);
  std::vector<double> local_xs, local_diff;
  std::vector<std::pair<double, double>> vm;
  double denom = 0.0;
  for (const auto& f : fam.fns) {
    // this function's norm on its own (small) partition
    local_xs.clear();
    for (const auto& l : f) {
      local_xs.push_back(l.left);
      local_xs.push_back(l.left + l.width);
    }
    std::sort(local_xs.begin(), local_xs.end());
    local_xs.erase(std::unique(local_xs.begin(), local_xs.end()), local_xs.end());
    local_diff.assign(local_xs.size(), 0.0);
    for (const auto& l : f) {
      const auto lo = std::lower_bound(local_xs.begin(), local_xs.end(), l.left) - local_xs.begin();
      const auto hi =
          std::lower_bound(local_xs.begin(), local_xs.end(), l.left + l.width) - local_xs.begin();
      local_diff[lo] += l.value;
      local_diff[hi] -= l.value;
      // accumulate into the global sum as well
      const auto glo = std::lower_bound(xs.begin(), xs.end(), l.left) - xs.begin();
      const auto ghi = std::lower_bound(xs.begin(), xs.end(), l.left + l.width) - xs.begin();
      sum_diff[glo] += l.value;
      sum_diff[ghi] -= l.value;
    }
    vm.clear();
    double run = 0.0;
    for (std::size_t i = 0; i + 1 < local_xs.size(); ++i) {
      run += local_diff[i];
      if (run > 0.0) vm.emplace_back(run, local_xs[i + 1] - local_xs[i]);
    }
    const double nk = lorentz_norm_value_mass(vm, e);
    denom += e.p < 1.0 ? std::pow(nk, e.p) : nk;
  }
  if (e.p < 1.0) denom = std::pow(denom, 1.0 / e.p);
  vm.clear();
  double run = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    run += sum_diff[i];
    if (run > 0.0) vm.emplace_back(run, xs[i + 1] - xs[i]);
  }
  const double num = lorentz_norm_value_mass(vm, e);
  return denom > 0.0 ? num / denom : 0.0;
}

namespace detail {

// Capped power profile |x - c|^{-a} as a nested stack of shells with
// geometric radii between inner and outer.
inline std::vector<StepFamily::Layer> power_stack(double center, double inner, double outer,
                                                  int shells, double a, bool two_sided) {
  std::vector<StepFamily::Layer> layers;
  if (!(outer > inner) || shells < 1) return layers;
  const double g = std::pow(outer / inner, 1.0 / shells);
  double prev_v = 0.0;
  for (int s = shells; s >= 0; --s) {
    const double rad = inner * std::pow(g, s);  // outer first, inner last
    const double v = std::pow(rad, -a);
    const double add = v - prev_v;
    prev_v = v;
    if (add <= 0.0) continue;
    if (two_sided) {
      const double left = std::max(0.0, center - rad);
      layers.push_back({add, left, center + rad - left});
    } else {
      layers.push_back({add, center, rad});
    }
  }
  return layers;
}

inline StepFamily gen_translates(std::mt19937_64& rng, double p) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StepFamily fam;
  const int K = 2 + static_cast<int>(unit(rng) * 62);
  const int shells = 1 + static_cast<int>(unit(rng) * 24);
  const double spacing = std::pow(10.0, -1.0 + 2.0 * unit(rng));
  const double inner = spacing * std::pow(10.0, -3.0 * unit(rng));
  const double outer = spacing * (1.0 + unit(rng) * K);
  const double a = (0.4 + 1.8 * unit(rng)) / p;  // profile steepness around 1/p
  const bool two_sided = unit(rng) < 0.5;
  for (int k = 0; k < K; ++k) {
    auto stack = power_stack(spacing * (k + 1), inner, outer, shells, a, two_sided);
    if (stack.empty()) continue;
    fam.fns.push_back(std::move(stack));
  }
  if (fam.fns.empty()) fam.fns.push_back({{1.0, 0.0, 1.0}});
  return fam;
}

inline StepFamily gen_ladder(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StepFamily fam;
  const int K = 2 + static_cast<int>(unit(rng) * 12);
  for (int k = 0; k < K; ++k) {
    std::vector<StepFamily::Layer> f;
    const int layers = 1 + static_cast<int>(unit(rng) * 4);
    for (int j = 0; j < layers; ++j) {
      const double value = std::pow(10.0, -5.0 + 10.0 * unit(rng));
      const double width = std::pow(10.0, -5.0 + 10.0 * unit(rng));
      const double left = unit(rng) < 0.4 ? 0.0 : width * 10.0 * unit(rng);
      f.push_back({value, left, width});
    }
    fam.fns.push_back(std::move(f));
  }
  return fam;
}

// Completion cascade: the sum is a flat indicator of height 1 on [0, x_D),
// each function contributing one column plus the shelf the next column
// stands on.  The p-power inequality is lossy exactly on such shapes.
inline StepFamily gen_core_shelf(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StepFamily fam;
  const int depth = 2 + static_cast<int>(unit(rng) * 14);
  const double growth = std::pow(10.0, 0.2 + 1.3 * unit(rng));
  std::vector<double> x(depth + 2);
  x[0] = 0.0;
  double w = 1.0;
  for (int d = 1; d <= depth + 1; ++d) {
    x[d] = x[d - 1] + w;
    w *= growth;
  }
  double incoming_shelf = 0.0;
  for (int d = 0; d < depth; ++d) {
    const double shelf = d + 1 < depth ? 0.2 + 0.6 * unit(rng) : 0.0;
    std::vector<StepFamily::Layer> f;
    const double column = 1.0 - incoming_shelf;
    if (column > 0.0) f.push_back({column, x[d], x[d + 1] - x[d]});
    if (shelf > 0.0) f.push_back({shelf, x[d + 1], x[d + 2] - x[d + 1]});
    if (!f.empty()) fam.fns.push_back(std::move(f));
    incoming_shelf = shelf;
  }
  if (fam.fns.empty()) fam.fns.push_back({{1.0, 0.0, 1.0}});
  return fam;
}

inline StepFamily mutate(const StepFamily& fam, std::mt19937_64& rng, double temp) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, temp);
  StepFamily out = fam;
  const int edits = 1 + static_cast<int>(unit(rng) * 3);
  for (int e = 0; e < edits; ++e) {
    auto& f = out.fns[static_cast<std::size_t>(unit(rng) * out.fns.size()) % out.fns.size()];
    auto& l = f[static_cast<std::size_t>(unit(rng) * f.size()) % f.size()];
    switch (static_cast<int>(unit(rng) * 3)) {
      case 0: l.value *= std::exp(gauss(rng)); break;
      case 1: l.width *= std::exp(gauss(rng)); break;
      default:
        if (l.left == 0.0 && unit(rng) < 0.3)
          l.left = l.width * unit(rng);
        else
          l.left = unit(rng) < 0.15 ? 0.0 : l.left * std::exp(gauss(rng));
        break;
    }
  }
  return out;
}

}  // namespace detail

/// Worst-case report for one (p, r) cell.
struct ConstantReport {
  double p = 0.0, r = 0.0;
  double analytic_bound_mod_A = std::numeric_limits<double>::quiet_NaN();
  double stw = std::numeric_limits<double>::quiet_NaN();
  double bks = std::numeric_limits<double>::quiet_NaN();
  double empirical_lower = 1.0;
  std::string best_configuration = "singleton";
  long budget = 0;
  std::uint64_t seed = 0;
};

/// Randomized maximization of the triangle ratio over step-function families:
/// structured generators (translated power profiles, geometric ladders,
/// core/shelf cascades) interleaved with coordinate-ascent refinement of the
/// incumbent.  Deterministic in (p, r, budget, seed); the singleton family
/// pins the result at >= 1.
inline ConstantReport empirical_constant(double p, double r, long budget, std::uint64_t seed) {
  const LorentzExponents e(p, r);
  ConstantReport rep;
  rep.p = p;
  rep.r = r;
  rep.budget = budget;
  rep.seed = seed;
  if (p < 1.0 && r > p) rep.analytic_bound_mod_A = bound_modulo_A(p, r);
  if (p < 1.0) rep.stw = stw_bound(p);
  if (p > 1.0 && r > p) rep.bks = bks_constant(p, r);

  StepFamily best;
  best.fns.push_back({{1.0, 0.0, 1.0}});
  double best_ratio = family_ratio(best, e);  // exactly 1

  std::mt19937_64 rng(mix_seed(seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long it = 0; it < budget; ++it) {
    StepFamily cand;
    const double phase = static_cast<double>(it) / std::max(1.0, static_cast<double>(budget));
    const bool explore = unit(rng) < std::max(0.10, 0.8 - 2.0 * phase);
    if (explore || best.fns.size() == 1) {
      const double pick = unit(rng);
      if (pick < 0.55)
        cand = detail::gen_translates(rng, p);
      else if (pick < 0.8)
        cand = detail::gen_ladder(rng);
      else
        cand = detail::gen_core_shelf(rng);
    } else {
      const double temp = std::max(0.015, 0.5 * std::pow(0.02, phase));
      cand = detail::mutate(best, rng, temp);
    }
    const double ratio = family_ratio(cand, e);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = std::move(cand);
    }
  }
  rep.empirical_lower = std::max(1.0, best_ratio);
  if (best_ratio > 1.0) rep.best_configuration = best.descriptor();
  return rep;
}

/// Deterministic random family for property checks.
inline StepFamily random_step_family(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::gen_ladder(rng);
}

}  // namespace lorlab
