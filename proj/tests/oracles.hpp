#pragma once

// Brute-force reference computations, deliberately free of the library's
// transforms so they can check it.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Block = std::vector<cplx>;

inline cplx twiddle(long long num, std::size_t den, int sign) {
  const long long r = ((num % static_cast<long long>(den)) + static_cast<long long>(den)) %
                      static_cast<long long>(den);
  return std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(r) /
                             static_cast<double>(den));
}

inline Block naive_dft(std::span<const cplx> x) {
  const std::size_t a = x.size();
  Block out(a);
  for (std::size_t k = 0; k < a; ++k)
    for (std::size_t p = 0; p < a; ++p)
      out[k] += x[p] * twiddle(static_cast<long long>(p * k), a, -1);
  return out;
}

inline Block naive_idft(std::span<const cplx> x) {
  const std::size_t a = x.size();
  Block out(a);
  for (std::size_t n = 0; n < a; ++n) {
    for (std::size_t p = 0; p < a; ++p)
      out[n] += x[p] * twiddle(static_cast<long long>(p * n), a, +1);
    out[n] /= static_cast<double>(a);
  }
  return out;
}

inline Block modular_convolution(std::span<const cplx> x, std::span<const cplx> h) {
  const std::size_t l = x.size();
  Block out(l);
  for (std::size_t n = 0; n < l; ++n)
    for (std::size_t m = 0; m < l; ++m) out[n] += x[m] * h[(n + l - m) % l];
  return out;
}

/// Classical localized transmitter: M-point DFT, bins first..first+M-1 of an
/// N-point grid, N-point inverse DFT.
inline Block classic_transmitter(std::span<const cplx> x, std::size_t n, std::size_t first = 0) {
  const Block spread = naive_dft(x);
  Block grid(n);
  for (std::size_t k = 0; k < x.size(); ++k) grid[first + k] = spread[k];
  return naive_idft(grid);
}

/// w~(n) = L_M sum_m w(m) g((n L_M - m L_N) mod L), evaluated literally.
inline Block equivalent_noise(std::span<const cplx> w, std::span<const cplx> g_time,
                              std::size_t m, std::size_t lm, std::size_t ln) {
  const std::size_t l = g_time.size();
  Block out(m);
  for (std::size_t n = 0; n < m; ++n) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const long long idx = static_cast<long long>(n * lm) - static_cast<long long>(k * ln);
      out[n] += w[k] * g_time[static_cast<std::size_t>(((idx % (long long)l) + (long long)l) %
                                                       (long long)l)];
    }
    out[n] *= static_cast<double>(lm);
  }
  return out;
}

inline std::size_t euclid_gcd(std::size_t a, std::size_t b) {
  while (b != 0) {
    const std::size_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs(std::span<const cplx> a) {
  double worst = 0.0;
  for (const cplx& v : a) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace oracle
