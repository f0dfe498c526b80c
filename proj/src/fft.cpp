#include "scfdma/fft.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace scfdma {

namespace {

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> radices;
  while (n % 4 == 0) {
    radices.push_back(4);
    n /= 4;
  }
  while (n % 2 == 0) {
    radices.push_back(2);
    n /= 2;
  }
  for (std::size_t p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      radices.push_back(p);
      n /= p;
    }
  }
  if (n > 1) radices.push_back(n);
  return radices;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("fft: length must be positive");
  radices_ = n > 1 ? factorize(n) : std::vector<std::size_t>{1};
  std::size_t remaining = n;
  for (std::size_t p : radices_) {
    remaining /= p;
    stage_len_.push_back(remaining);
  }
  forward_twiddles_.resize(n);
  backward_twiddles_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    forward_twiddles_[k] = std::polar(1.0, phase);
    backward_twiddles_[k] = std::conj(forward_twiddles_[k]);
  }
}

void FftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("fft: size mismatch");
  work(out.data(), in.data(), 1, 0, forward_twiddles_, false);
}

void FftPlan::backward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("fft: size mismatch");
  work(out.data(), in.data(), 1, 0, backward_twiddles_, true);
}

void FftPlan::work(cplx* out, const cplx* in, std::size_t fstride, std::size_t stage,
                   const std::vector<cplx>& twiddles, bool backward) const {
  const std::size_t p = radices_[stage];
  const std::size_t m = stage_len_[stage];
  cplx* const begin = out;
  cplx* const end = out + p * m;

  if (m == 1) {
    for (cplx* o = out; o != end; ++o, in += fstride) *o = *in;
  } else {
    for (cplx* o = out; o != end; o += m, in += fstride) {
      work(o, in, fstride * p, stage + 1, twiddles, backward);
    }
  }

  switch (p) {
    case 1:
      break;
    case 2:
      butterfly2(begin, fstride, m, twiddles);
      break;
    case 4:
      butterfly4(begin, fstride, m, twiddles, backward);
      break;
    default:
      butterfly_generic(begin, fstride, m, p, twiddles);
  }
}

void FftPlan::butterfly2(cplx* out, std::size_t fstride, std::size_t m,
                         const std::vector<cplx>& twiddles) const {
  cplx* upper = out + m;
  for (std::size_t k = 0; k < m; ++k) {
    const cplx t = upper[k] * twiddles[k * fstride];
    upper[k] = out[k] - t;
    out[k] += t;
  }
}

void FftPlan::butterfly4(cplx* out, std::size_t fstride, std::size_t m,
                         const std::vector<cplx>& twiddles, bool backward) const {
  for (std::size_t k = 0; k < m; ++k) {
    const cplx s0 = out[k + m] * twiddles[k * fstride];
    const cplx s1 = out[k + 2 * m] * twiddles[2 * k * fstride];
    const cplx s2 = out[k + 3 * m] * twiddles[3 * k * fstride];
    const cplx s5 = out[k] - s1;
    const cplx a = out[k] + s1;
    const cplx s3 = s0 + s2;
    const cplx s4 = s0 - s2;
    // Multiplication of s4 by -j (forward) or +j (backward).
    const cplx rot = backward ? cplx(-s4.imag(), s4.real()) : cplx(s4.imag(), -s4.real());
    out[k] = a + s3;
    out[k + 2 * m] = a - s3;
    out[k + m] = s5 + rot;
    out[k + 3 * m] = s5 - rot;
  }
}

void FftPlan::butterfly_generic(cplx* out, std::size_t fstride, std::size_t m, std::size_t p,
                                const std::vector<cplx>& twiddles) const {
  std::vector<cplx> scratch(p);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t q = 0; q < p; ++q) scratch[q] = out[u + q * m];
    for (std::size_t q1 = 0; q1 < p; ++q1) {
      const std::size_t k = u + q1 * m;
      const std::size_t step = fstride * k % n_;
      std::size_t tw = 0;
      cplx acc = scratch[0];
      for (std::size_t q = 1; q < p; ++q) {
        tw += step;
        if (tw >= n_) tw -= n_;
        acc += scratch[q] * twiddles[tw];
      }
      out[k] = acc;
    }
  }
}

const FftPlan& fft_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

}  // namespace scfdma
