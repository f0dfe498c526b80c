#pragma once

// Transform conventions and multirate primitives.
//
//   forward_dft:  X_k = sum_p x_p e^{-j2pi pk/A}          (no scaling)
//   inverse_dft:  x_n = (1/A) sum_p X_p e^{+j2pi pn/A}
//
// Every PSD and SINR constant elsewhere assumes this asymmetric pair.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scfdma {

using cplx = std::complex<double>;
using ComplexBlock = std::vector<cplx>;

ComplexBlock forward_dft(std::span<const cplx> x);
ComplexBlock inverse_dft(std::span<const cplx> spectrum);

/// Stacking with parameters (L, n): out(r) = (1/L_n) sum_s d(s n + r), L_n = L/n.
ComplexBlock stack(std::span<const cplx> d, std::size_t n);

/// `times`-fold concatenation of x.
ComplexBlock repeat(std::span<const cplx> x, std::size_t times);

/// Zero insertion: out(n) = x(n / factor) when factor | n, else 0.
ComplexBlock upsample(std::span<const cplx> x, std::size_t factor);

/// Decimation: out(n) = x(n * factor). factor must divide x.size().
ComplexBlock downsample(std::span<const cplx> x, std::size_t factor);

/// out(n) = sum_m x(m) h((n - m) mod L). Picks the direct modular sum for
/// short blocks and the transform-domain product otherwise.
ComplexBlock circular_convolve(std::span<const cplx> x, std::span<const cplx> h);

/// Direct O(L^2) modular sum, vectorized through kernels::dot.
ComplexBlock circular_convolve_direct(std::span<const cplx> x, std::span<const cplx> h);

/// Transform-domain product forward_dft(x) * forward_dft(h), inverted.
ComplexBlock circular_convolve_fft(std::span<const cplx> x, std::span<const cplx> h);

namespace testing {
/// Mutation hook for the validation suite: while set, inverse_dft skips its
/// 1/A factor. Never set outside tests.
void set_normalization_fault(bool enabled);
bool normalization_fault();
}  // namespace testing

}  // namespace scfdma
