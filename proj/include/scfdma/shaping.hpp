#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scfdma/dft.hpp"
#include "scfdma/geometry.hpp"

namespace scfdma {

enum class WindowKind { Rectangular, RootRaisedCosine };

enum class NyquistPolicy {
  Enforce,
  /// Skip the receiver sampling condition. Only meaningful for exercising the
  /// multirate identities on toy geometries.
  Waive,
};

struct ShapingConfig {
  WindowKind kind = WindowKind::Rectangular;
  double alpha = 0.0;
  /// Which length-M block of bins the user occupies; defaults to 0 for
  /// rectangular and 1 for root raised cosine.
  std::optional<std::size_t> user_block_index;
};

/// Length-L transmit frequency response H and its time filter h = IDFT_L(H).
class SpectralWindow {
 public:
  WindowKind kind() const { return kind_; }
  double rolloff() const { return alpha_; }
  std::size_t block() const { return block_; }
  const ComplexBlock& response() const { return response_; }
  const ComplexBlock& filter() const { return filter_; }
  /// Bins where H is non-zero, ascending.
  const std::vector<std::size_t>& support() const { return support_; }
  bool in_support(std::size_t k) const { return response_[k] != cplx{}; }

 private:
  friend SpectralWindow rectangular_window(const SystemGeometry&, std::size_t);
  friend SpectralWindow rrc_window(const SystemGeometry&, double, std::size_t, NyquistPolicy);
  SpectralWindow(WindowKind kind, double alpha, std::size_t block, ComplexBlock response);

  WindowKind kind_;
  double alpha_;
  std::size_t block_;
  ComplexBlock response_;
  ComplexBlock filter_;
  std::vector<std::size_t> support_;
};

/// H_k = 1 on bins [block M, (block + 1) M), 0 elsewhere over length L.
SpectralWindow rectangular_window(const SystemGeometry& g, std::size_t block = 0);

/// M_alpha = floor(alpha M / 2), the number of excess bins on each side.
std::size_t rrc_excess_bins(std::size_t m, double alpha);

/// Root-raised-cosine window on the U = M + 2 M_alpha bins
/// {block M - M_alpha, ..., (block + 1) M + M_alpha - 1}.
///
/// The square root of a textbook raised cosine is sampled at M bins per
/// symbol bandwidth, centred on the user's block. The roll-off is quantized
/// to 2 M_alpha / M so the transition bands cover exactly 2 M_alpha bins at
/// each edge; this keeps the declared support exact and the bins M apart
/// power-complementary.
SpectralWindow rrc_window(const SystemGeometry& g, double alpha, std::size_t block = 1,
                          NyquistPolicy policy = NyquistPolicy::Enforce);

SpectralWindow make_window(const SystemGeometry& g, const ShapingConfig& config,
                           NyquistPolicy policy = NyquistPolicy::Enforce);

}  // namespace scfdma
