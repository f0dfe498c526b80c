#include "scfdma/dft.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include "scfdma/fft.hpp"
#include "scfdma/kernels.hpp"

namespace scfdma {

namespace {

std::atomic<bool> g_normalization_fault{false};

constexpr std::size_t kDirectConvolutionMax = 64;

void require_nonempty(std::span<const cplx> x, const char* what) {
  if (x.empty()) throw std::invalid_argument(std::string(what) + ": empty block");
}

}  // namespace

ComplexBlock forward_dft(std::span<const cplx> x) {
  require_nonempty(x, "forward_dft");
  ComplexBlock out(x.size());
  fft_plan(x.size()).forward(x, out);
  return out;
}

ComplexBlock inverse_dft(std::span<const cplx> spectrum) {
  require_nonempty(spectrum, "inverse_dft");
  ComplexBlock out(spectrum.size());
  fft_plan(spectrum.size()).backward(spectrum, out);
  if (!g_normalization_fault.load(std::memory_order_relaxed)) {
    const double scale = 1.0 / static_cast<double>(spectrum.size());
    for (cplx& v : out) v *= scale;
  }
  return out;
}

ComplexBlock stack(std::span<const cplx> d, std::size_t n) {
  if (n == 0 || d.size() % n != 0) {
    throw std::invalid_argument("stack: " + std::to_string(n) + " does not divide " +
                                std::to_string(d.size()));
  }
  const std::size_t folds = d.size() / n;
  ComplexBlock out(n);
  for (std::size_t s = 0; s < folds; ++s) {
    for (std::size_t r = 0; r < n; ++r) out[r] += d[s * n + r];
  }
  const double scale = 1.0 / static_cast<double>(folds);
  for (cplx& v : out) v *= scale;
  return out;
}

ComplexBlock repeat(std::span<const cplx> x, std::size_t times) {
  if (times == 0) throw std::invalid_argument("repeat: times must be positive");
  ComplexBlock out;
  out.reserve(x.size() * times);
  for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), x.begin(), x.end());
  return out;
}

ComplexBlock upsample(std::span<const cplx> x, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("upsample: factor must be positive");
  ComplexBlock out(x.size() * factor);
  for (std::size_t i = 0; i < x.size(); ++i) out[i * factor] = x[i];
  return out;
}

ComplexBlock downsample(std::span<const cplx> x, std::size_t factor) {
  if (factor == 0 || x.size() % factor != 0) {
    throw std::invalid_argument("downsample: factor " + std::to_string(factor) +
                                " does not divide " + std::to_string(x.size()));
  }
  ComplexBlock out(x.size() / factor);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i * factor];
  return out;
}

ComplexBlock circular_convolve(std::span<const cplx> x, std::span<const cplx> h) {
  if (x.size() <= kDirectConvolutionMax) return circular_convolve_direct(x, h);
  return circular_convolve_fft(x, h);
}

ComplexBlock circular_convolve_direct(std::span<const cplx> x, std::span<const cplx> h) {
  if (x.size() != h.size()) throw std::invalid_argument("circular_convolve: length mismatch");
  require_nonempty(x, "circular_convolve");
  const std::size_t len = x.size();
  // reversed[j] = h((-j) mod L) over two periods, so the taps seen by output n
  // are the contiguous window reversed[L - n, 2L - n).
  ComplexBlock reversed(2 * len);
  for (std::size_t j = 0; j < 2 * len; ++j) reversed[j] = h[(2 * len - j) % len];
  ComplexBlock out(len);
  const std::span<const cplx> taps(reversed);
  for (std::size_t n = 0; n < len; ++n) out[n] = kernels::dot(x, taps.subspan(len - n, len));
  return out;
}

ComplexBlock circular_convolve_fft(std::span<const cplx> x, std::span<const cplx> h) {
  if (x.size() != h.size()) throw std::invalid_argument("circular_convolve: length mismatch");
  ComplexBlock xs = forward_dft(x);
  const ComplexBlock hs = forward_dft(h);
  kernels::multiply(xs, hs, xs);
  return inverse_dft(xs);
}

namespace testing {
void set_normalization_fault(bool enabled) { g_normalization_fault.store(enabled); }
bool normalization_fault() { return g_normalization_fault.load(); }
}  // namespace testing

}  // namespace scfdma
