#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "skewwalk/fft.hpp"
#include "skewwalk/laws.hpp"

namespace testsupport {

inline std::size_t bin_of(long long j, std::size_t n) {
  long long m = j % static_cast<long long>(n);
  if (m < 0) m += static_cast<long long>(n);
  return static_cast<std::size_t>(m);
}

// Independent series oracle for the return-time generating kernel:
//   u_s(x) = 1{x=0} + sum_{k=1}^{K} s^k P{S(k) = -x} + remainder,
// remainder bounded by s^{K+1}/(1-s). The k-step laws are convolution powers
// of the pmf truncated to |j| <= kernel_half, carried on a circular window of
// 2^log2n sites. No quadrature anywhere on this path.
inline double u_s_series_oracle(const skewwalk::LatticeLaw& law, long long x, double s,
                                double target_tol = 1e-9, std::size_t log2n = 16,
                                long long kernel_half = 8192) {
  if (s == 0.0) return x == 0 ? 1.0 : 0.0;
  const std::size_t n = std::size_t{1} << log2n;
  const int K = static_cast<int>(std::ceil(std::log(target_tol * (1.0 - s)) / std::log(s)));
  std::vector<std::complex<double>> kernel(n, 0.0);
  for (long long j = -kernel_half; j <= kernel_half; ++j) kernel[bin_of(j, n)] += law.pmf(j);
  skewwalk::fft(kernel);
  std::vector<std::complex<double>> acc(n, 0.0);    // sum_k s^k G^k, k = 1..K
  std::vector<std::complex<double>> power(n, 1.0);  // G^k, built up iteratively
  double sk = 1.0;
  for (int k = 1; k <= K; ++k) {
    sk *= s;
    for (std::size_t i = 0; i < n; ++i) {
      power[i] *= kernel[i];
      acc[i] += sk * power[i];
    }
  }
  skewwalk::fft(acc, true);
  return (x == 0 ? 1.0 : 0.0) + acc[bin_of(-x, n)].real();
}

}  // namespace testsupport
