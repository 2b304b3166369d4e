#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace lorlab {
namespace detail {

// FFTW plan creation is not thread-safe; executions on distinct arrays are.
// Plans are cached per (size, direction) with FFTW_ESTIMATE so results do not
// depend on planner timing.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans p;
    return p;
  }

  void execute(std::vector<std::complex<double>>& data, int sign) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto key = std::make_pair(data.size(), sign);
      auto it = plans_.find(key);
      if (it == plans_.end()) {
        // plan on a scratch buffer so `data` is untouched during planning
        std::vector<std::complex<double>> scratch(data.size());
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw_plan_dft_1d failed");
        plans_.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
  }

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace detail

/// In-place DFT, unnormalized: out[m] = sum_j in[j] e^{-2 pi i j m / N}.
inline void fft_forward(std::vector<std::complex<double>>& data) {
  detail::FftPlans::instance().execute(data, FFTW_FORWARD);
}

/// In-place inverse DFT normalized by 1/N, so fft_inverse(fft_forward(x)) == x.
inline void fft_inverse(std::vector<std::complex<double>>& data) {
  detail::FftPlans::instance().execute(data, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= inv;
}

/// Signed frequency index of bin m on a length-n grid: 0..n/2-1, then negative.
inline long signed_bin(std::size_t m, std::size_t n) {
  return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

}  // namespace lorlab
