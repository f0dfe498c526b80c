#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scfdma/dft.hpp"
#include "scfdma/geometry.hpp"
#include "scfdma/shaping.hpp"

namespace scfdma {

/// sin(N_t w / 2) / (N_t sin(w / 2)); at w = 2 pi k returns the limit (-1)^{k (N_t - 1)}.
double dirichlet(double w, std::size_t nt);

/// Transmit pulse applied to each N_t-sample symbol, described by its
/// frequency response at normalized frequency f (cycles per sample).
struct PulseShape {
  enum class Kind { RectangularNt, Custom };

  Kind kind = Kind::Custom;
  std::function<cplx(double)> transfer;

  /// Length-N_t rectangular pulse:
  /// e^{-j pi f (N_t - 1)} N_t dirichlet(2 pi f).
  static PulseShape rectangular(std::size_t nt);
  static PulseShape custom(std::function<cplx(double)> transfer);

  cplx operator()(double f) const { return transfer(f); }
};

struct PsdCurve {
  std::vector<double> freqs;
  std::vector<double> values;  // linear density per unit normalized frequency
  std::string label;
};

/// `count` points k / count on [0, 1).
std::vector<double> uniform_grid(std::size_t count);

/// (M sigma_x2 / (N_t N^2)) sum_r |sum_s H_{sM+r} Psi(f - (sM+r)/N)|^2.
PsdCurve analytical_psd(const SpectralWindow& H, const SystemGeometry& g, const PulseShape& pulse,
                        std::span<const double> grid, double sigma_x2);

/// Rectangular-window closed form, sum_r |Psi(f - (block M + r)/N)|^2.
PsdCurve rectangular_psd(const SpectralWindow& H, const SystemGeometry& g,
                         const PulseShape& pulse, std::span<const double> grid, double sigma_x2);

/// Three-regime form for a root-raised-cosine window on block 1:
///   r <  M_a:          H_{M+r} Psi(f - (M+r)/N) + H_{2M+r} Psi(f - (2M+r)/N)
///   M_a <= r < M-M_a:  H_{M+r} Psi(f - (M+r)/N)
///   r >= M - M_a:      H_{M+r} Psi(f - (M+r)/N) + H_r Psi(f - r/N)
PsdCurve rrc_regime_psd(const SpectralWindow& H, const SystemGeometry& g,
                        const PulseShape& pulse, std::span<const double> grid, double sigma_x2);

enum class SegmentWindow { Rectangular, Hann };

struct WelchParams {
  std::size_t segment_len = 0;
  double overlap = 0.5;
  SegmentWindow window = SegmentWindow::Rectangular;
};

/// Averaged modified periodogram on the grid k / segment_len, scaled so that
/// unit-variance white noise gives 1.
PsdCurve welch_estimate(std::span<const cplx> samples, const WelchParams& params);

/// Accumulator form of welch_estimate for streams that arrive in pieces.
class WelchAccumulator {
 public:
  explicit WelchAccumulator(const WelchParams& params);

  void push(std::span<const cplx> samples);
  std::size_t segments() const { return segments_; }
  PsdCurve result() const;

 private:
  void process(std::span<const cplx> segment);

  WelchParams params_;
  std::size_t step_;
  std::vector<double> taper_;
  double taper_energy_ = 0.0;
  ComplexBlock pending_;
  std::vector<double> sum_;
  std::size_t segments_ = 0;
  std::size_t total_samples_ = 0;
};

}  // namespace scfdma
