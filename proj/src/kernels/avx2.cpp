// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "scfdma/kernels.hpp"

namespace scfdma::kernels::avx2 {

namespace {

inline const double* raw(std::span<const cplx> v) {
  return reinterpret_cast<const double*>(v.data());
}

inline double* raw(std::span<cplx> v) { return reinterpret_cast<double*>(v.data()); }

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (a0 a1) * (b0 b1) for two interleaved complex doubles per register.
inline __m256d complex_mul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

}  // namespace

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = a.size();
  const double* pa = raw(a);
  const double* pb = raw(b);
  // acc_direct holds ar*br, ai*bi pairs; acc_cross holds ar*bi, ai*br.
  __m256d acc_direct0 = _mm256_setzero_pd();
  __m256d acc_cross0 = _mm256_setzero_pd();
  __m256d acc_direct1 = _mm256_setzero_pd();
  __m256d acc_cross1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    acc_direct0 = _mm256_fmadd_pd(va0, vb0, acc_direct0);
    acc_cross0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0x5), acc_cross0);
    acc_direct1 = _mm256_fmadd_pd(va1, vb1, acc_direct1);
    acc_cross1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0x5), acc_cross1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_direct0 = _mm256_fmadd_pd(va, vb, acc_direct0);
    acc_cross0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_cross0);
  }
  const __m256d direct = _mm256_add_pd(acc_direct0, acc_direct1);
  const __m256d cross = _mm256_add_pd(acc_cross0, acc_cross1);
  // Real part: even lanes minus odd lanes.
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = horizontal_sum(_mm256_mul_pd(direct, sign));
  double im = horizontal_sum(cross);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  const std::size_t n = a.size();
  const double* pa = raw(a);
  const double* pb = raw(b);
  double* po = raw(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(po + 2 * i, complex_mul(va, vb));
  }
  for (; i < n; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    out[i] = {re, im};
  }
}

void accumulate_power(std::span<const cplx> x, std::span<double> acc) {
  const std::size_t n = x.size();
  const double* px = raw(x);
  double* pacc = acc.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(px + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(px + 2 * i + 4);
    // hadd interleaves the 128-bit lanes: (p0, p2, p1, p3).
    const __m256d p = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    const __m256d ordered = _mm256_permute4x64_pd(p, 0xD8);
    _mm256_storeu_pd(pacc + i, _mm256_add_pd(_mm256_loadu_pd(pacc + i), ordered));
  }
  for (; i < n; ++i) {
    acc[i] += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
}

double energy(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* px = raw(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(px + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(px + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return sum;
}

}  // namespace scfdma::kernels::avx2
