#include "scfdma/txchain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scfdma/kernels.hpp"

namespace scfdma {

namespace {

void scale(ComplexBlock& v, double factor) {
  for (cplx& x : v) x *= factor;
}

void check_block(const SymbolBlock& xb, const SpectralWindow& w, const SystemGeometry& g) {
  if (xb.x.size() != g.m()) throw std::invalid_argument("tx: symbol block length != M");
  if (w.response().size() != g.l()) throw std::invalid_argument("tx: window length != L");
}

void check_receive(const TimeFrame& r, const EqualizerResponse& G, const SystemGeometry& g) {
  if (r.has_cp || r.samples.size() != g.n()) {
    throw std::invalid_argument("rx: expects a CP-free frame of length N");
  }
  if (G.G.size() != g.l() || G.g_time.size() != g.l()) {
    throw std::invalid_argument("rx: equalizer length != L");
  }
}

}  // namespace

cplx qpsk_symbol(RngStream& rng) {
  const std::uint64_t b = rng.bits();
  const double a = 1.0 / std::sqrt(2.0);
  return {(b & 1) ? a : -a, (b & 2) ? a : -a};
}

SymbolBlock random_block(RngStream& rng, std::size_t m, double sigma_x2,
                         const Constellation& constellation) {
  if (!(sigma_x2 > 0.0)) throw std::invalid_argument("symbol variance must be positive");
  SymbolBlock xb;
  xb.sigma_x2 = sigma_x2;
  xb.x.resize(m);
  const double amplitude = std::sqrt(sigma_x2);
  for (cplx& v : xb.x) v = amplitude * constellation(rng);
  return xb;
}

SymbolBlock qpsk_block(RngStream& rng, std::size_t m, double sigma_x2) {
  return random_block(rng, m, sigma_x2, qpsk_symbol);
}

TimeFrame tx_reference(const SymbolBlock& xb, const SpectralWindow& w, const SystemGeometry& g) {
  check_block(xb, w, g);
  ComplexBlock spectrum = repeat(forward_dft(xb.x), g.lm());
  kernels::multiply(spectrum, w.response(), spectrum);
  TimeFrame out{inverse_dft(stack(spectrum, g.n())), false};
  scale(out.samples, static_cast<double>(g.ln()));
  return out;
}

TimeFrame tx_time_equivalent(const SymbolBlock& xb, const SpectralWindow& w,
                             const SystemGeometry& g) {
  check_block(xb, w, g);
  const ComplexBlock filtered = circular_convolve(upsample(xb.x, g.lm()), w.filter());
  TimeFrame out{downsample(filtered, g.ln()), false};
  scale(out.samples, static_cast<double>(g.ln()));
  return out;
}

TimeFrame add_cp(const TimeFrame& frame, const SystemGeometry& g) {
  if (frame.has_cp) throw std::invalid_argument("add_cp: frame already carries a CP");
  if (frame.samples.size() != g.n()) throw std::invalid_argument("add_cp: frame length != N");
  TimeFrame out;
  out.has_cp = true;
  out.samples.reserve(g.nt());
  out.samples.insert(out.samples.end(), frame.samples.end() - static_cast<long>(g.cp()),
                     frame.samples.end());
  out.samples.insert(out.samples.end(), frame.samples.begin(), frame.samples.end());
  return out;
}

TimeFrame remove_cp(const TimeFrame& frame, const SystemGeometry& g) {
  if (!frame.has_cp) throw std::invalid_argument("remove_cp: frame carries no CP");
  if (frame.samples.size() != g.nt()) throw std::invalid_argument("remove_cp: length != N_t");
  return {ComplexBlock(frame.samples.begin() + static_cast<long>(g.cp()), frame.samples.end()),
          false};
}

ComplexBlock rx_reference(const TimeFrame& r, const EqualizerResponse& G,
                          const SystemGeometry& g) {
  check_receive(r, G, g);
  ComplexBlock spectrum = repeat(forward_dft(r.samples), g.ln());
  kernels::multiply(spectrum, G.G, spectrum);
  ComplexBlock out = inverse_dft(stack(spectrum, g.m()));
  scale(out, static_cast<double>(g.lm()));
  return out;
}

ComplexBlock rx_time_equivalent(const TimeFrame& r, const EqualizerResponse& G,
                                const SystemGeometry& g) {
  check_receive(r, G, g);
  ComplexBlock out = downsample(circular_convolve(upsample(r.samples, g.ln()), G.g_time), g.lm());
  scale(out, static_cast<double>(g.lm()));
  return out;
}

Decomposition end_to_end_simplified(const SymbolBlock& xb, const OverallResponse& P,
                                    std::span<const cplx> noise, const SystemGeometry& g) {
  const std::size_t m = g.m();
  if (xb.x.size() != m || noise.size() != m || P.decimated.size() != m) {
    throw std::invalid_argument("end_to_end_simplified: block lengths must equal M");
  }
  const double lm = static_cast<double>(g.lm());
  // taps[j] = p~((m - j) mod M) over two periods, so row n reads
  // taps[M - n .. 2M - n) = p~((n - i) mod M) for i = 0..M-1.
  ComplexBlock taps(2 * m);
  for (std::size_t j = 0; j < 2 * m; ++j) taps[j] = P.decimated[(2 * m - j) % m];
  const std::span<const cplx> tap_view(taps);

  Decomposition d;
  d.estimate.resize(m);
  d.useful.resize(m);
  d.interference.resize(m);
  d.noise.assign(noise.begin(), noise.end());
  const cplx centre = lm * P.decimated[0];
  for (std::size_t n = 0; n < m; ++n) {
    const cplx mixed = lm * kernels::dot(xb.x, tap_view.subspan(m - n, m));
    d.useful[n] = centre * xb.x[n];
    d.interference[n] = mixed - d.useful[n];
    d.estimate[n] = mixed + d.noise[n];
  }
  return d;
}

ComplexBlock equivalent_noise(std::span<const cplx> w, const EqualizerResponse& G,
                              const SystemGeometry& g) {
  if (w.size() != g.n()) throw std::invalid_argument("equivalent_noise: length != N");
  return rx_time_equivalent(TimeFrame{ComplexBlock(w.begin(), w.end()), false}, G, g);
}

}  // namespace scfdma
