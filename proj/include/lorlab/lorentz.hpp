#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rearrangement.hpp"

namespace lorlab {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lorentz exponent pair (p, r): p finite positive, r positive or infinite.
/// p = infinity is rejected throughout.
struct LorentzExponents {
  double p;
  double r;

  LorentzExponents(double p_, double r_) : p(p_), r(r_) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("LorentzExponents: p must be finite and positive");
    if (!(r > 0.0)) throw std::invalid_argument("LorentzExponents: r must be positive");
  }

  bool r_infinite() const { return std::isinf(r); }
};

namespace detail {

// a^e - b^e for 0 <= b <= a without catastrophic cancellation.
inline double pow_diff(double a, double b, double e) {
  if (b == 0.0) return std::pow(a, e);
  if (a == b) return 0.0;
  return -std::pow(a, e) * std::expm1(e * std::log(b / a));
}

}  // namespace detail

/// Quasi-norm of a step rearrangement:
///   r < inf : ( sum_i v_i^r (t_i^{r/p} - t_{i-1}^{r/p}) )^{1/r}
///   r = inf : max_i v_i t_i^{1/p}
/// This is the exact value of the Lorentz quasi-norm for step data.
inline double lorentz_norm(const StepRearrangement& f, const LorentzExponents& e) {
  if (f.steps.empty()) return 0.0;
  if (e.r_infinite()) {
    double best = 0.0;
    for (const auto& s : f.steps)
      best = std::max(best, s.value * std::pow(s.right_breakpoint, 1.0 / e.p));
    return best;
  }
  const double rp = e.r / e.p;
  double acc = 0.0;
  double prev_t = 0.0;
  for (const auto& s : f.steps) {
    acc += std::pow(s.value, e.r) * detail::pow_diff(s.right_breakpoint, prev_t, rp);
    prev_t = s.right_breakpoint;
  }
  return std::pow(acc, 1.0 / e.r);
}

/// Same norm from moduli already sorted descending on a uniform grid; values
/// past the first zero are ignored.  Fast path for large grids.
inline double lorentz_norm_sorted_desc(const std::vector<double>& vals, double cell_mass,
                                       const LorentzExponents& e) {
  const double h = cell_mass;
  if (e.r_infinite()) {
    double best = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] <= 0.0) break;
      best = std::max(best, vals[i] * std::pow(h * static_cast<double>(i + 1), 1.0 / e.p));
    }
    return best;
  }
  const double rp = e.r / e.p;
  const double hrp = std::pow(h, rp);
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] <= 0.0) break;
    const double cur = std::pow(static_cast<double>(i + 1), rp);
    acc += std::pow(vals[i], e.r) * (cur - prev);
    prev = cur;
  }
  return std::pow(hrp * acc, 1.0 / e.r);
}

inline double lorentz_norm(const GridFunction& f, const LorentzExponents& e) {
  std::vector<double> mod = f.moduli();
  std::sort(mod.begin(), mod.end(), std::greater<double>());
  return lorentz_norm_sorted_desc(mod, f.cell_mass, e);
}

/// Alternative evaluation through the distribution function,
///   ( r  int [mu_f(alpha)^{1/p} alpha]^r  dalpha/alpha )^{1/r},
/// summed in closed form over the intervals between distinct sample moduli.
/// Agrees with lorentz_norm to ~1e-12 relative; kept as an independent route.
inline double lorentz_norm_via_distribution(const GridFunction& f, const LorentzExponents& e) {
  std::vector<double> mod = f.moduli();
  std::sort(mod.begin(), mod.end(), std::greater<double>());
  // distinct levels c_1 > ... > c_n with cumulative masses d_j
  std::vector<double> level, cum;
  std::size_t i = 0;
  while (i < mod.size() && mod[i] > 0.0) {
    std::size_t j = i + 1;
    while (j < mod.size() && mod[j] == mod[i]) ++j;
    level.push_back(mod[i]);
    cum.push_back(static_cast<double>(j) * f.cell_mass);
    i = j;
  }
  if (level.empty()) return 0.0;
  if (e.r_infinite()) {
    // sup_alpha alpha mu_f(alpha)^{1/p}, attained in the limit alpha -> c_j-
    double best = 0.0;
    for (std::size_t j = 0; j < level.size(); ++j)
      best = std::max(best, level[j] * std::pow(cum[j], 1.0 / e.p));
    return best;
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < level.size(); ++j) {
    const double next = j + 1 < level.size() ? level[j + 1] : 0.0;
    acc += std::pow(cum[j], e.r / e.p) * detail::pow_diff(level[j], next, e.r);
  }
  return std::pow(acc, 1.0 / e.r);
}

// --- maximal-function norm ---------------------------------------------------

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (symmetric halves).
inline const double* gl16_x() {
  static const double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                              0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
  return x;
}
inline const double* gl16_w() {
  static const double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                              0.1495959888165767, 0.1316886384491766, 0.1019301198172404,
                              0.0803744180189741, 0.0556685671161737};
  return w;
}

template <class F>
double gauss16(const F& fn, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < 8; ++k) {
    s += gl16_w()[k] * (fn(c - hw * gl16_x()[k]) + fn(c + hw * gl16_x()[k]));
  }
  return s * hw;
}

// Integrate fn over [a, b] (0 < a < b) on a geometric panel partition,
// doubling the panel count until the relative change is below tol.
template <class F>
double integrate_geometric(const F& fn, double a, double b, double tol) {
  int panels = std::max(4, static_cast<int>(std::ceil(std::log2(b / a))));
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int round = 0; round < 24; ++round) {
    const double ratio = std::pow(b / a, 1.0 / panels);
    double s = 0.0, left = a;
    for (int k = 0; k < panels; ++k) {
      const double right = (k + 1 == panels) ? b : left * ratio;
      s += gauss16(fn, left, right);
      left = right;
    }
    if (round > 0 && std::abs(s - prev) <= tol * std::abs(s)) return s;
    prev = s;
    panels *= 2;
  }
  return prev;
}

}  // namespace detail

/// Norm built from the maximal function f**(t) = (1/t) int_0^t f*,
///   ( (r/p) int_0^inf [t^{1/p} f**(t)]^r dt/t )^{1/r},
/// sup-form for r = inf.  f** is closed-form per rearrangement segment
/// (v_i + D_i/t); segment integrals are evaluated by quadrature at rel_tol.
/// Divergent for p <= 1 on nonzero data (the 1/t tail is not integrable).
inline double double_star_norm(const StepRearrangement& f, const LorentzExponents& e,
                               double rel_tol = 1e-9) {
  if (f.steps.empty()) return 0.0;
  const std::size_t n = f.steps.size();
  // cumulative integrals of f*: C_i = int_0^{t_i} f*
  std::vector<double> cum(n, 0.0);
  double prev_t = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += f.steps[i].value * (f.steps[i].right_breakpoint - prev_t);
    cum[i] = acc;
    prev_t = f.steps[i].right_breakpoint;
  }
  const double total = cum[n - 1];
  const double t_last = f.steps[n - 1].right_breakpoint;

  if (e.r_infinite()) {
    // sup of g(t) = t^{1/p}(v + D/t) per segment plus the tail C t^{1/p - 1}
    double best = 0.0;
    prev_t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = f.steps[i].value;
      const double D = (i == 0 ? 0.0 : cum[i - 1]) - v * prev_t;
      const double t1 = f.steps[i].right_breakpoint;
      auto g = [&](double t) { return std::pow(t, 1.0 / e.p) * (v + D / t); };
      best = std::max(best, g(t1));
      if (prev_t > 0.0) best = std::max(best, g(prev_t));
      const double tc = D * (e.p - 1.0) / v;
      if (e.p > 1.0 && tc > prev_t && tc < t1) best = std::max(best, g(tc));
      prev_t = t1;
    }
    if (e.p < 1.0) return kInf;
    if (e.p == 1.0) return std::max(best, total);
    best = std::max(best, std::pow(t_last, 1.0 / e.p - 1.0) * total);
    return best;
  }

  if (e.p <= 1.0) return kInf;  // tail (C/t)^r t^{r/p-1} not integrable
  const double rp = e.r / e.p;
  double norm_r = 0.0;
  prev_t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = f.steps[i].value;
    const double D = (i == 0 ? 0.0 : cum[i - 1]) - v * prev_t;
    const double t1 = f.steps[i].right_breakpoint;
    if (D == 0.0) {
      // constant f** = v on (prev_t, t1): exact
      norm_r += std::pow(v, e.r) * detail::pow_diff(t1, prev_t, rp);
    } else {
      auto integrand = [&](double t) {
        return std::pow(t, rp - 1.0) * std::pow(v + D / t, e.r);
      };
      const double a = prev_t > 0.0 ? prev_t : t1 * 1e-12;
      norm_r += detail::integrate_geometric(integrand, a, t1, rel_tol);
    }
    prev_t = t1;
  }
  // tail: (total/t)^r t^{r/p-1} integrated over (t_last, inf), closed form
  norm_r += std::pow(total, e.r) * std::pow(t_last, rp - e.r) / (e.r - rp);
  return std::pow((e.r / e.p) * norm_r, 1.0 / e.r);
}

inline double double_star_norm(const GridFunction& f, const LorentzExponents& e,
                               double rel_tol = 1e-9) {
  return double_star_norm(rearrange(f), e, rel_tol);
}

/// |f|^sigma.  Satisfies || |f|^sigma ||_{p/sigma, r/sigma} = ||f||_{p,r}^sigma.
inline GridFunction power_transform(const GridFunction& f, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("power_transform: sigma must be positive");
  GridFunction g = f;
  for (auto& v : g.samples) v = std::pow(std::abs(v), sigma);
  return g;
}

}  // namespace lorlab
