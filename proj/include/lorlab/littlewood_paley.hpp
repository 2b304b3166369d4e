#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "lorentz.hpp"
#include "sequence_spaces.hpp"

namespace lorlab {

namespace detail {

// Classical smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace detail

/// Inhomogeneous dyadic frequency multipliers on a periodic grid.
/// beta_0 = 1 on |xi| <= 3/2, 0 on |xi| >= 7/4; beta_k(xi) =
/// beta_0(2^{-k} xi) - beta_0(2^{1-k} xi).  Band k >= 1 is supported on
/// |xi| in (3 2^{k-2}, 7 2^{k-2}) with plateau [7/8, 3/2] 2^k; the family
/// telescopes to 1 on |xi| <= 3 2^{K-1}.
struct BumpFamily {
  std::size_t grid_length = 0;
  double torus = 1.0;  // physical torus length; grid frequencies are m / torus
  int K = 0;           // bands 0..K

  static double beta0(double xi) {
    const double a = std::abs(xi);
    if (a <= 1.5) return 1.0;
    if (a >= 1.75) return 0.0;
    return detail::smooth_step((1.75 - a) * 4.0);
  }

  double beta(int k, double xi) const {
    if (k == 0) return beta0(xi);
    return beta0(std::ldexp(xi, -k)) - beta0(std::ldexp(xi, 1 - k));
  }

  /// Largest |signed bin| that band k can touch (support bound 7 2^{k-2}).
  long band_bin_limit(int k) const {
    const double xi_max = k == 0 ? 1.75 : 7.0 * std::ldexp(1.0, k - 2);
    return static_cast<long>(std::floor(xi_max * torus));
  }

  double nyquist_frequency() const {
    return static_cast<double>(grid_length) / (2.0 * torus);
  }
};

inline BumpFamily build_beta_family(std::size_t grid_length, int K, double torus = 1.0) {
  if (!is_power_of_two(grid_length))
    throw std::invalid_argument("build_beta_family: grid length must be a power of two");
  if (K < 0) throw std::invalid_argument("build_beta_family: K must be nonnegative");
  BumpFamily fam;
  fam.grid_length = grid_length;
  fam.torus = torus;
  fam.K = K;
  if (7.0 * std::ldexp(1.0, K - 2) >= fam.nyquist_frequency())
    throw std::invalid_argument("build_beta_family: band exceeds Nyquist");
  return fam;
}

/// One function space: scale (Besov or Triebel-Lizorkin), smoothness s,
/// summation exponent q over bands, Lorentz pair (p, r) in space.
struct SmoothnessParams {
  enum class Scale { B, F };
  Scale scale;
  double s;
  double q;  // may be infinite
  double p;
  double r;  // may be infinite
  int d = 1;

  void validate() const {
    LorentzExponents check(p, r);  // validates p finite positive, r positive
    (void)check;
    if (!(q > 0.0)) throw std::invalid_argument("SmoothnessParams: q must be positive");
    if (!std::isfinite(s)) throw std::invalid_argument("SmoothnessParams: s must be finite");
  }
};

namespace detail {

struct BandPass {
  const GridFunction* f;
  const BumpFamily* fam;
  std::vector<cplx> spectrum;     // forward DFT of samples (unnormalized)
  std::vector<double> band_amp;   // L2 amplitude of each band

  BandPass(const GridFunction& g, const BumpFamily& family) : f(&g), fam(&family) {
    if (g.length() != family.grid_length)
      throw std::invalid_argument("littlewood-paley: grid length mismatch");
    if (std::abs(g.torus_length() - family.torus) > 1e-9 * family.torus)
      throw std::invalid_argument("littlewood-paley: torus length mismatch");
    spectrum = g.samples;
    fft_forward(spectrum);
    band_amp.assign(family.K + 1, 0.0);
    const std::size_t n = spectrum.size();
    for (std::size_t m = 0; m < n; ++m) {
      const double xi = static_cast<double>(signed_bin(m, n)) / family.torus;
      const double a2 = std::norm(spectrum[m]);
      if (a2 == 0.0) continue;
      for (int k = 0; k <= family.K; ++k) {
        const double b = family.beta(k, xi);
        if (b != 0.0) band_amp[k] += b * b * a2;
      }
    }
    for (auto& a : band_amp) a = std::sqrt(a) / static_cast<double>(n);
  }

  /// Band function Lambda_k f into `out` (resized as needed).
  void extract(int k, std::vector<cplx>& out) const {
    const std::size_t n = spectrum.size();
    out.assign(n, cplx{0.0, 0.0});
    const long limit = fam->band_bin_limit(k);
    for (std::size_t m = 0; m < n; ++m) {
      const long sb = signed_bin(m, n);
      if (sb > limit || sb < -limit) continue;
      const double b = fam->beta(k, static_cast<double>(sb) / fam->torus);
      if (b != 0.0) out[m] = spectrum[m] * b;
    }
    fft_inverse(out);
  }
};

}  // namespace detail

/// {Lambda_k f} for k = 0..K.  For band-limited f the pieces sum back to f.
inline FunctionSequence lp_decompose(const GridFunction& f, const BumpFamily& fam) {
  detail::BandPass pass(f, fam);
  FunctionSequence out;
  out.members.reserve(fam.K + 1);
  std::vector<cplx> buf;
  for (int k = 0; k <= fam.K; ++k) {
    pass.extract(k, buf);
    out.members.emplace_back(buf, f.cell_mass);
  }
  return out;
}

/// Max-modulus reconstruction error of sum_k Lambda_k f against f, relative
/// to max |f|.  Exact (machine precision) when f is band-limited below the
/// top plateau.
inline double reconstruction_error(const GridFunction& f, const BumpFamily& fam) {
  FunctionSequence parts = lp_decompose(f, fam);
  double max_err = 0.0, max_abs = 0.0;
  for (std::size_t i = 0; i < f.length(); ++i) {
    cplx sum{0.0, 0.0};
    for (const auto& part : parts.members) sum += part.samples[i];
    max_err = std::max(max_err, std::abs(sum - f.samples[i]));
    max_abs = std::max(max_abs, std::abs(f.samples[i]));
  }
  return max_abs > 0.0 ? max_err / max_abs : max_err;
}

/// Besov and Triebel-Lizorkin norms for several parameter sets in one
/// decomposition pass: one forward FFT, one inverse FFT per contributing band,
/// one sort per band (shared by all Besov requests) and one sort per TL
/// request.  Bands whose weighted amplitude is below 1e-16 of the dominant
/// band are skipped; this makes spectrally sparse families cheap.
inline std::vector<double> space_norms(const GridFunction& f, const BumpFamily& fam,
                                       const std::vector<SmoothnessParams>& requests) {
  for (const auto& r : requests) r.validate();
  detail::BandPass pass(f, fam);
  const std::size_t n = f.length();

  // weighted skip decision across all requests
  std::vector<bool> keep(fam.K + 1, false);
  double dominant = 0.0;
  std::vector<double> weighted(fam.K + 1, 0.0);
  for (int k = 0; k <= fam.K; ++k) {
    double wmax = 0.0;
    for (const auto& r : requests) wmax = std::max(wmax, std::pow(2.0, k * r.s));
    weighted[k] = pass.band_amp[k] * wmax;
    dominant = std::max(dominant, weighted[k]);
  }
  for (int k = 0; k <= fam.K; ++k) keep[k] = weighted[k] > 1e-16 * dominant;

  const bool any_besov =
      std::any_of(requests.begin(), requests.end(),
                  [](const SmoothnessParams& r) { return r.scale == SmoothnessParams::Scale::B; });

  std::vector<std::vector<double>> besov_terms(requests.size());
  std::vector<std::vector<double>> tl_acc(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (requests[i].scale == SmoothnessParams::Scale::F) tl_acc[i].assign(n, 0.0);
  }

  std::vector<cplx> band;
  std::vector<double> mod(n), sorted;
  sorted.reserve(n);
  for (int k = 0; k <= fam.K; ++k) {
    if (!keep[k]) continue;
    pass.extract(k, band);
    double sup = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      mod[x] = std::abs(band[x]);
      sup = std::max(sup, mod[x]);
    }
    if (any_besov) {
      // values below 1e-18 of the sup cannot move any Lorentz norm at the
      // tolerances in play; dropping them keeps the sort proportional to the
      // occupied support
      const double floor_v = sup * 1e-18;
      sorted.clear();
      for (std::size_t x = 0; x < n; ++x)
        if (mod[x] > floor_v) sorted.push_back(mod[x]);
      std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    }
    for (std::size_t i = 0; i < requests.size(); ++i) {
      const auto& sp = requests[i];
      const double w = std::pow(2.0, k * sp.s);
      if (sp.scale == SmoothnessParams::Scale::B) {
        const double nk = lorentz_norm_sorted_desc(sorted, f.cell_mass, LorentzExponents(sp.p, sp.r));
        besov_terms[i].push_back(w * nk);
      } else if (std::isinf(sp.q)) {
        for (std::size_t x = 0; x < n; ++x) tl_acc[i][x] = std::max(tl_acc[i][x], w * mod[x]);
      } else {
        for (std::size_t x = 0; x < n; ++x) tl_acc[i][x] += std::pow(w * mod[x], sp.q);
      }
    }
  }

  std::vector<double> out(requests.size(), 0.0);
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& sp = requests[i];
    if (sp.scale == SmoothnessParams::Scale::B) {
      if (std::isinf(sp.q)) {
        for (double t : besov_terms[i]) out[i] = std::max(out[i], t);
      } else {
        double acc = 0.0;
        for (double t : besov_terms[i]) acc += std::pow(t, sp.q);
        out[i] = std::pow(acc, 1.0 / sp.q);
      }
    } else {
      std::vector<double>& stack = tl_acc[i];
      if (!std::isinf(sp.q))
        for (auto& v : stack) v = std::pow(v, 1.0 / sp.q);
      double sup = 0.0;
      for (double v : stack) sup = std::max(sup, v);
      const double floor_v = sup * 1e-18;
      std::vector<double> kept;
      kept.reserve(stack.size() / 4);
      for (double v : stack)
        if (v > floor_v) kept.push_back(v);
      std::sort(kept.begin(), kept.end(), std::greater<double>());
      out[i] = lorentz_norm_sorted_desc(kept, f.cell_mass, LorentzExponents(sp.p, sp.r));
    }
  }
  return out;
}

/// ( sum_k 2^{ksq} ||Lambda_k f||_{p,r}^q )^{1/q}, sup over k for q = inf.
inline double besov_norm(const GridFunction& f, const BumpFamily& fam,
                         const SmoothnessParams& sp) {
  if (sp.scale != SmoothnessParams::Scale::B)
    throw std::invalid_argument("besov_norm: scale must be B");
  return space_norms(f, fam, {sp})[0];
}

/// Lorentz norm of ( sum_k |2^{ks} Lambda_k f|^q )^{1/q}; q = inf pointwise sup.
inline double tl_norm(const GridFunction& f, const BumpFamily& fam,
                      const SmoothnessParams& sp) {
  if (sp.scale != SmoothnessParams::Scale::F)
    throw std::invalid_argument("tl_norm: scale must be F");
  return space_norms(f, fam, {sp})[0];
}

}  // namespace lorlab
