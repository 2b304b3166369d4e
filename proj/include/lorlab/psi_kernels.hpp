#pragma once

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fft.hpp"
#include "grid_function.hpp"
#include "lorentz.hpp"

namespace lorlab {

namespace detail {

// C-infinity bump on (-1, 1), normalized to 1 at the origin.
inline long double bump(long double u) {
  const long double u2 = u * u;
  if (u2 >= 1.0L) return 0.0L;
  return std::exp(1.0L - 1.0L / (1.0L - u2));
}

// Even moments int_{-1}^{1} u^{2m} bump(u) du by composite Simpson; the
// integrand vanishes to all orders at the endpoints, so this converges fast.
inline std::vector<long double> bump_even_moments(int count) {
  const int panels = 1 << 14;
  const long double h = 1.0L / panels;
  std::vector<long double> mom(count, 0.0L);
  for (int m = 0; m < count; ++m) {
    long double s = 0.0L;
    for (int i = 0; i < panels; ++i) {
      const long double a = i * h, b = (i + 1) * h, c = 0.5L * (a + b);
      auto g = [&](long double u) { return std::pow(u, 2.0L * m) * bump(u); };
      s += (g(a) + 4.0L * g(c) + g(b)) * (b - a) / 6.0L;
    }
    mom[m] = 2.0L * s;  // even integrand, double the half-line value
  }
  return mom;
}

// Solve A x = rhs with partial pivoting in long double.
inline std::vector<long double> solve_dense(std::vector<std::vector<long double>> A,
                                            std::vector<long double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::fabs((double)A[row][col]) > std::fabs((double)A[piv][col])) piv = row;
    if (std::fabs((double)A[piv][col]) < 1e-300)
      throw std::runtime_error("moment system is singular");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int row = col + 1; row < n; ++row) {
      const long double f = A[row][col] / A[col][col];
      for (int c2 = col; c2 < n; ++c2) A[row][c2] -= f * A[col][c2];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<long double> x(n, 0.0L);
  for (int row = n - 1; row >= 0; --row) {
    long double s = rhs[row];
    for (int c2 = row + 1; c2 < n; ++c2) s -= A[row][c2] * x[c2];
    x[row] = s / A[row][row];
  }
  return x;
}

}  // namespace detail

/// Analytic profile of the moment-vanishing kernel: psi_0(x) =
/// P(x/h) bump(x/h) / h with P a polynomial solved so that int psi_0 = 1,
/// moments 1..M vanish, and moment M+1 is pinned away from zero (so the
/// dyadic decay rates are the generic ones).  psi_k for k >= 1 is the dyadic
/// difference 2^k psi_0(2^k x) - 2^{k-1} psi_0(2^{k-1} x); it has vanishing
/// moments 0..M, which drives the cross-band decay.
struct PsiProfile {
  double halfwidth = 0.125;
  int moment_order = 0;
  std::vector<double> coeffs;  // P(u) = sum_j coeffs[j] u^j

  double psi0(double x) const {
    const long double u = static_cast<long double>(x) / halfwidth;
    const long double b = detail::bump(u);
    if (b == 0.0L) return 0.0;
    long double poly = 0.0L, upow = 1.0L;
    for (double c : coeffs) {
      poly += c * upow;
      upow *= u;
    }
    return static_cast<double>(poly * b) / halfwidth;
  }

  /// psi_k at unit scale; k = 0 is psi0 itself.
  double psi_k(int k, double x) const {
    if (k == 0) return psi0(x);
    const double s = std::ldexp(1.0, k);
    return s * psi0(s * x) - 0.5 * s * psi0(0.5 * s * x);
  }

  double support_halfwidth_of(int k) const {
    return k == 0 ? halfwidth : halfwidth * std::ldexp(1.0, 1 - k);
  }
};

/// Solved kernel family plus sampled copies and the psi_1 * psi_1 >= c hook.
struct PsiKernels {
  PsiProfile profile;
  GridFunction psi0;
  std::vector<GridFunction> psi;  // psi_k for k = 1..scale_count
  int moment_order = 0;
  double conv_floor = 0.0;         // c with psi_1*psi_1 >= c on the interval
  double conv_interval = 0.0;      // halfwidth of that interval around 0
};

/// Samples a callable centered at 0 on the torus [0, torus), wrapping negative
/// arguments to the top half of the grid.
template <class F>
GridFunction sample_centered(const F& fn, std::size_t grid_len, double torus) {
  GridFunction g = GridFunction::zeros(grid_len, torus / static_cast<double>(grid_len));
  for (std::size_t i = 0; i < grid_len; ++i) {
    double x = (static_cast<double>(i) + 0.5) * g.cell_mass;
    if (x > torus / 2.0) x -= torus;
    g.samples[i] = fn(x);
  }
  return g;
}

inline PsiProfile solve_psi_profile(int M, double support_halfwidth) {
  if (M < 1) throw std::invalid_argument("build_psi_kernels: moment order must be >= 1");
  if (!(support_halfwidth > 0.0))
    throw std::invalid_argument("build_psi_kernels: support halfwidth must be positive");
  PsiProfile prof;
  prof.halfwidth = support_halfwidth;
  prof.moment_order = M;
  prof.coeffs.assign(M + 2, 0.0);

  // even sector: moments 0, 2, ... <= M; Hankel Gram of a positive weight
  const int even_n = M / 2 + 1;
  const auto mom = detail::bump_even_moments(M + 3);
  {
    std::vector<std::vector<long double>> A(even_n, std::vector<long double>(even_n));
    std::vector<long double> rhs(even_n, 0.0L);
    for (int i = 0; i < even_n; ++i)
      for (int j = 0; j < even_n; ++j) A[i][j] = mom[i + j];
    rhs[0] = 1.0L;
    const auto c = detail::solve_dense(A, rhs);
    for (int j = 0; j < even_n; ++j) prof.coeffs[2 * j] = static_cast<double>(c[j]);
  }

  // Odd moments vanish by parity.  For even M that would also kill moment
  // M+1, so an odd sector pins it to a nonzero target; for odd M the even
  // solve already leaves moment M+1 generically nonzero.  The odd part is
  // damped to a fraction of the even part's L2 mass so the kernel stays a
  // perturbed bump (the pinned moment scales along, staying nonzero).
  if (M % 2 == 0) {
    const int odd_n = (M + 2) / 2;  // degrees 1, 3, ..., M+1
    std::vector<std::vector<long double>> A(odd_n, std::vector<long double>(odd_n));
    std::vector<long double> rhs(odd_n, 0.0L);
    for (int i = 0; i < odd_n; ++i)  // moment rows 1, 3, ..., M+1
      for (int j = 0; j < odd_n; ++j) A[i][j] = mom[i + j + 1];
    rhs[odd_n - 1] = 0.25L * mom[(M + 2) / 2];  // same scale as the u^{M+2} moment
    const auto c = detail::solve_dense(A, rhs);
    for (int j = 0; j < odd_n; ++j) prof.coeffs[2 * j + 1] = static_cast<double>(c[j]);

    auto l2_part = [&](bool odd) {
      const int panels = 1 << 12;
      long double s = 0.0L;
      for (int i = -panels; i < panels; ++i) {
        const long double u = (i + 0.5L) / panels;
        long double poly = 0.0L, upow = 1.0L;
        for (std::size_t jj = 0; jj < prof.coeffs.size(); ++jj) {
          if ((jj % 2 == 1) == odd) poly += prof.coeffs[jj] * upow;
          upow *= u;
        }
        const long double v = poly * detail::bump(u);
        s += v * v / panels;
      }
      return std::sqrt((double)s);
    };
    const double even_mass = l2_part(false), odd_mass = l2_part(true);
    if (odd_mass > 0.3 * even_mass) {
      const double damp = 0.3 * even_mass / odd_mass;
      for (std::size_t jj = 1; jj < prof.coeffs.size(); jj += 2) prof.coeffs[jj] *= damp;
    }
  }
  return prof;
}

inline PsiKernels build_psi_kernels(int M, double support_halfwidth, int scale_count,
                                    std::size_t grid_len = 1u << 14, double torus = 1.0) {
  if (scale_count < 1) throw std::invalid_argument("build_psi_kernels: scale_count must be >= 1");
  if (support_halfwidth * 2.0 > torus)
    throw std::invalid_argument("build_psi_kernels: support does not fit the grid");
  PsiKernels out;
  out.profile = solve_psi_profile(M, support_halfwidth);
  out.moment_order = M;
  out.psi0 = sample_centered([&](double x) { return out.profile.psi0(x); }, grid_len, torus);
  out.psi.reserve(scale_count);
  for (int k = 1; k <= scale_count; ++k)
    out.psi.push_back(
        sample_centered([&](double x) { return out.profile.psi_k(k, x); }, grid_len, torus));

  // moment residuals of the solved profile, checked on the sampling grid
  const GridFunction& p0 = out.psi0;
  for (int m = 0; m <= std::min(M, 4); ++m) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < p0.length(); ++i) {
      double x = (static_cast<double>(i) + 0.5) * p0.cell_mass;
      if (x > torus / 2.0) x -= torus;
      s += p0.samples[i].real() * std::pow((long double)x, (long double)m) * p0.cell_mass;
    }
    const double target = m == 0 ? 1.0 : 0.0;
    if (std::fabs((double)s - target) > 1e-6)
      throw std::runtime_error("moment system is singular (residual too large)");
  }

  // psi_1 * psi_1 lower-bound hook: convolve on the sampling grid and report
  // the widest interval around the peak of |psi_1 * psi_1| holding at least
  // half the peak value.
  std::vector<cplx> spec = out.psi[0].samples;
  fft_forward(spec);
  for (auto& v : spec) v *= v;
  fft_inverse(spec);
  const double cell = out.psi[0].cell_mass;
  const std::size_t n = spec.size();
  std::size_t peak = 0;
  double peak_val = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::abs(spec[i].real()) * cell;
    if (v > peak_val) {
      peak_val = v;
      peak = i;
    }
  }
  if (!(peak_val > 0.0)) throw std::runtime_error("psi_1 self-convolution vanishes");
  const double floor_c = 0.5 * peak_val;
  std::size_t steps = 0;
  auto conv_at = [&](std::size_t off_lo, std::size_t off_hi) {
    return std::min(std::abs(spec[(peak + off_hi) % n].real()),
                    std::abs(spec[(peak + n - off_lo) % n].real())) *
           cell;
  };
  while (steps + 1 < n / 2 && conv_at(steps + 1, steps + 1) >= floor_c) ++steps;
  out.conv_floor = floor_c;
  out.conv_interval = static_cast<double>(steps) * cell;
  return out;
}

/// Exact Fourier transform of the kernel profile, evaluated by quadrature of
/// the analytic bump-times-polynomial and cached per argument.  Keeps the
/// dyadic decay measurement free of sampling floors.
class PsiSpectrum {
 public:
  explicit PsiSpectrum(const PsiProfile& prof) : prof_(prof) {
    // fixed trapezoid nodes; superexponentially accurate since the kernel is
    // smooth and compactly supported with all derivatives vanishing at the
    // boundary
    nodes_.resize(kNodes);
    const double du = 2.0 / kNodes;
    for (int i = 0; i < kNodes; ++i) {
      const double u = -1.0 + (i + 0.5) * du;
      double poly = 0.0, upow = 1.0;
      for (double cf : prof_.coeffs) {
        poly += cf * upow;
        upow *= u;
      }
      nodes_[i] = poly * static_cast<double>(detail::bump(u)) * du;
    }
    // effective support radius of psi0-hat: beyond it the transform is below
    // the quadrature noise floor and treated as zero
    radius_ = 8.0;
    int below = 0;
    while (radius_ < 1024.0 && below < 8) {
      below = std::abs(quadrature(radius_)) < 3e-17 ? below + 1 : 0;
      radius_ += 4.0;
    }
  }

  double radius() const { return radius_; }

  /// Tabulates psi0-hat on [-range, range] for fast interpolated access.
  /// psi0-hat is band-limited to |x| <= halfwidth, so cubic interpolation on
  /// a grid well above that rate is accurate to ~1e-11.
  void build_table(double range = 64.0, double spacing = 1.0 / 128.0) {
    table_spacing_ = spacing;
    const int count = static_cast<int>(std::ceil(range / spacing)) + 4;
    table_.resize(count);
    for (int i = 0; i < count; ++i) table_[i] = quadrature(i * spacing);
  }

  /// Interpolated psi0-hat; falls back to quadrature if no table was built.
  cplx psi0_hat_fast(double eta) const {
    if (table_.empty()) return psi0_hat(eta);
    const double a = std::abs(eta);
    const double pos = a / table_spacing_;
    const int i = static_cast<int>(pos);
    if (i + 2 >= static_cast<int>(table_.size())) return {0.0, 0.0};
    const double t = pos - i;
    // Catmull-Rom through the four neighboring samples
    const cplx p0 = table_[i == 0 ? 1 : i - 1], p1 = table_[i], p2 = table_[i + 1],
               p3 = table_[i + 2];
    const cplx pm1 = i == 0 ? cplx{p0.real(), -p0.imag()} : p0;
    cplx val = 0.5 * ((2.0 * p1) + (-pm1 + p2) * t + (2.0 * pm1 - 5.0 * p1 + 4.0 * p2 - p3) * (t * t) +
                      (-pm1 + 3.0 * p1 - 3.0 * p2 + p3) * (t * t * t));
    if (eta < 0.0) val = {val.real(), -val.imag()};
    return val;
  }

  cplx psi1_hat_fast(double xi) const { return psi0_hat_fast(0.5 * xi) - psi0_hat_fast(xi); }

  /// psi0-hat(eta) = int psi0(x) e^{-2 pi i eta x} dx.
  cplx psi0_hat(double eta) const {
    if (std::abs(eta) > radius_) return {0.0, 0.0};
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof eta);
    std::memcpy(&bits, &eta, sizeof bits);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(bits);
      if (it != cache_.end()) return it->second;
    }
    const cplx val = quadrature(eta);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(bits, val);
    return val;
  }

  cplx psi1_hat(double xi) const { return psi0_hat(0.5 * xi) - psi0_hat(xi); }
  cplx psij_hat(int j, double xi) const {
    return psi0_hat(std::ldexp(xi, -j)) - psi0_hat(std::ldexp(xi, 1 - j));
  }

 private:
  static constexpr int kNodes = 8192;

  cplx quadrature(double eta) const {
    // sum g(u_i) e^{-2 pi i eta h u_i}; the phase advances by recurrence,
    // re-anchored every 128 steps to keep the drift near machine epsilon
    const double h = prof_.halfwidth;
    const double du = 2.0 / kNodes;
    const double dphase = -2.0 * M_PI * eta * h * du;
    const cplx rot{std::cos(dphase), std::sin(dphase)};
    double re = 0.0, im = 0.0;
    cplx phase{0.0, 0.0};
    for (int i = 0; i < kNodes; ++i) {
      if (i % 128 == 0) {
        const double u = -1.0 + (i + 0.5) * du;
        const double p = -2.0 * M_PI * eta * h * u;
        phase = {std::cos(p), std::sin(p)};
      }
      re += nodes_[i] * phase.real();
      im += nodes_[i] * phase.imag();
      phase *= rot;
    }
    return {re, im};  // the 1/h density normalization cancels against dx = h du
  }

  const PsiProfile prof_;
  std::vector<double> nodes_;
  double radius_ = 0.0;
  std::vector<cplx> table_;
  double table_spacing_ = 0.0;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, cplx> cache_;
};

/// sup-norm of the local means L_j h = psi_j * h for j in [j_lo, j_hi], where
/// h(x) = sum_{i=0}^{count-1} psi_1(2^n (x - i 2^{-n})) on the unit torus.
/// Fourier coefficients are assembled from the exact kernel transform (the
/// lattice contributes a closed-form Dirichlet factor); the FFT only converts
/// band-limited coefficients to samples for the sup.
inline std::vector<double> local_means_sup(const PsiSpectrum& spec, int count, int n, int j_lo,
                                           int j_hi, std::size_t grid_len = 1u << 18) {
  if (j_lo < 1 || j_hi < j_lo) throw std::invalid_argument("local_means_sup: bad j range");
  if (count < 1 || n < 1) throw std::invalid_argument("local_means_sup: bad lattice");
  const long half = static_cast<long>(grid_len / 2);
  std::vector<double> sups;
  sups.reserve(j_hi - j_lo + 1);
  std::vector<cplx> coeff(grid_len);
  for (int j = j_lo; j <= j_hi; ++j) {
    std::fill(coeff.begin(), coeff.end(), cplx{0.0, 0.0});
    // both factors die beyond their argument radius; only the overlap matters
    const long m_max = std::min<long>(
        half - 1, static_cast<long>(std::ceil(spec.radius() * std::ldexp(2.0, std::min(j, n)))));
    for (long m = -m_max; m <= m_max; ++m) {
      if (m == 0) continue;  // psi1 has exact mean zero
      const double xi = static_cast<double>(m);
      const cplx hhat = spec.psi1_hat(std::ldexp(xi, -n)) * std::ldexp(1.0, -n);
      if (std::abs(hhat) * count < 1e-24) continue;
      // Dirichlet factor of the truncated lattice {i 2^{-n}: i < count}
      const double theta = -2.0 * M_PI * xi * std::ldexp(1.0, -n);
      const double denom = std::sin(0.5 * theta);
      const double mid = 0.5 * (count - 1) * theta;
      const double mag =
          std::abs(denom) < 1e-14 ? static_cast<double>(count) : std::sin(0.5 * count * theta) / denom;
      const cplx dirichlet = mag * cplx{std::cos(mid), std::sin(mid)};
      const cplx total = hhat * dirichlet * spec.psij_hat(j, xi);
      const std::size_t idx =
          m >= 0 ? static_cast<std::size_t>(m) : grid_len - static_cast<std::size_t>(-m);
      coeff[idx] = total;
    }
    std::vector<cplx> samples = coeff;
    // applying the forward transform to coefficients yields the sample
    // sequence reversed; the sup over the torus is reversal-invariant
    fft_forward(samples);
    double sup = 0.0;
    for (const auto& v : samples) sup = std::max(sup, std::abs(v));
    sups.push_back(sup);
  }
  return sups;
}

}  // namespace lorlab
