#pragma once

#include <cstddef>
#include <functional>

#include "scfdma/dft.hpp"
#include "scfdma/equalize.hpp"
#include "scfdma/geometry.hpp"
#include "scfdma/rng.hpp"
#include "scfdma/shaping.hpp"

namespace scfdma {

struct SymbolBlock {
  ComplexBlock x;
  double sigma_x2 = 1.0;
};

/// Draws one zero-mean unit-power symbol. Any i.i.d. constellation works;
/// only the variance enters the analysis.
using Constellation = std::function<cplx(RngStream&)>;

/// (+-1 +-j)/sqrt(2).
cplx qpsk_symbol(RngStream& rng);

SymbolBlock random_block(RngStream& rng, std::size_t m, double sigma_x2,
                         const Constellation& constellation);
SymbolBlock qpsk_block(RngStream& rng, std::size_t m, double sigma_x2 = 1.0);

struct TimeFrame {
  ComplexBlock samples;
  bool has_cp = false;
};

/// y = L_N IDFT_N(stack(repeat(DFT_M x, L_M) . H, N)).
TimeFrame tx_reference(const SymbolBlock& xb, const SpectralWindow& w, const SystemGeometry& g);

/// y(n) = L_N (upsample(x, L_M) (*) h)(n L_N).
TimeFrame tx_time_equivalent(const SymbolBlock& xb, const SpectralWindow& w,
                             const SystemGeometry& g);

TimeFrame add_cp(const TimeFrame& frame, const SystemGeometry& g);
TimeFrame remove_cp(const TimeFrame& frame, const SystemGeometry& g);

/// x^ = L_M IDFT_M(stack(repeat(DFT_N r, L_N) . G, M)).
ComplexBlock rx_reference(const TimeFrame& r, const EqualizerResponse& G,
                          const SystemGeometry& g);

/// x^(n) = L_M (upsample(r, L_N) (*) g)(n L_M).
ComplexBlock rx_time_equivalent(const TimeFrame& r, const EqualizerResponse& G,
                                const SystemGeometry& g);

/// Receiver output split into the three additive parts.
struct Decomposition {
  ComplexBlock estimate;
  ComplexBlock useful;        // L_M p~(0) x(n)
  ComplexBlock interference;  // L_M sum_{m != n} p~(n - m) x(m)
  ComplexBlock noise;
};

/// x^(n) = L_M sum_m p~((n - m) mod M) x(m) + noise(n), with p~ = P.decimated.
Decomposition end_to_end_simplified(const SymbolBlock& xb, const OverallResponse& P,
                                    std::span<const cplx> noise, const SystemGeometry& g);

/// Receiver-referred noise: the length-N channel noise w pushed through the
/// receive chain, w~(n) = L_M (upsample(w, L_N) (*) g)(n L_M).
ComplexBlock equivalent_noise(std::span<const cplx> w, const EqualizerResponse& G,
                              const SystemGeometry& g);

}  // namespace scfdma
