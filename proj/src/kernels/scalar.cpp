#include "scfdma/kernels.hpp"

namespace scfdma::kernels::scalar {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    out[i] = {re, im};
  }
}

void accumulate_power(std::span<const cplx> x, std::span<double> acc) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc[i] += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
}

double energy(std::span<const cplx> x) {
  double sum = 0.0;
  for (const cplx& v : x) {
    sum += v.real() * v.real() + v.imag() * v.imag();
  }
  return sum;
}

}  // namespace scfdma::kernels::scalar
