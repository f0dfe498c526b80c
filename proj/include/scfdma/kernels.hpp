#pragma once

// Data-parallel inner loops shared by the chain models.
//
// Every kernel has a portable scalar reference in kernels::scalar and, on
// x86-64 builds, an AVX2/FMA variant in kernels::avx2. The unqualified entry
// points dispatch through a table chosen once per process from the CPU
// features, or from SCFDMA_KERNELS=scalar|avx2 when set. Variants agree to
// rounding; they are not bit-identical because the summation order differs.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace scfdma::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Instruction set the dispatcher currently routes to.
Isa active_isa();

/// True when the AVX2 variants are compiled in and the CPU supports them.
bool avx2_available();

/// Route all subsequent calls to `isa`. Throws std::invalid_argument when the
/// variant is unavailable. Not synchronized with concurrent kernel calls.
void select_isa(Isa isa);

/// sum_i a[i] * b[i] (no conjugation). Lengths must match.
cplx dot(std::span<const cplx> a, std::span<const cplx> b);

/// out[i] = a[i] * b[i]. `out` may alias `a` or `b`.
void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);

/// acc[i] += |x[i]|^2.
void accumulate_power(std::span<const cplx> x, std::span<double> acc);

/// sum_i |x[i]|^2.
double energy(std::span<const cplx> x);

namespace scalar {
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void accumulate_power(std::span<const cplx> x, std::span<double> acc);
double energy(std::span<const cplx> x);
}  // namespace scalar

#ifdef SCFDMA_HAVE_AVX2
namespace avx2 {
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void accumulate_power(std::span<const cplx> x, std::span<double> acc);
double energy(std::span<const cplx> x);
}  // namespace avx2
#endif

}  // namespace scfdma::kernels
