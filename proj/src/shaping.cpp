#include "scfdma/shaping.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scfdma {

SpectralWindow::SpectralWindow(WindowKind kind, double alpha, std::size_t block,
                               ComplexBlock response)
    : kind_(kind), alpha_(alpha), block_(block), response_(std::move(response)) {
  filter_ = inverse_dft(response_);
  for (std::size_t k = 0; k < response_.size(); ++k) {
    if (response_[k] != cplx{}) support_.push_back(k);
  }
}

SpectralWindow rectangular_window(const SystemGeometry& g, std::size_t block) {
  if ((block + 1) * g.m() > g.n()) {
    throw std::invalid_argument("rectangular_window: block " + std::to_string(block) +
                                " does not fit in N = " + std::to_string(g.n()));
  }
  ComplexBlock h(g.l());
  for (std::size_t k = block * g.m(); k < (block + 1) * g.m(); ++k) h[k] = 1.0;
  return SpectralWindow(WindowKind::Rectangular, 0.0, block, std::move(h));
}

std::size_t rrc_excess_bins(std::size_t m, double alpha) {
  return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m) / 2.0));
}

SpectralWindow rrc_window(const SystemGeometry& g, double alpha, std::size_t block,
                          NyquistPolicy policy) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("rrc_window: roll-off must lie in [0, 1]");
  }
  if (policy == NyquistPolicy::Enforce && !nyquist_check(g, alpha)) {
    throw std::invalid_argument("rrc_window: N = " + std::to_string(g.n()) +
                                " violates N >= 2(1 + alpha) M for M = " +
                                std::to_string(g.m()));
  }
  const std::size_t m = g.m();
  const std::size_t excess = rrc_excess_bins(m, alpha);
  const std::size_t first = block * m;
  if (first < excess || (block + 1) * m + excess > g.l()) {
    throw std::invalid_argument("rrc_window: support of block " + std::to_string(block) +
                                " leaves [0, L)");
  }
  const double md = static_cast<double>(m);
  const double quantized = 2.0 * static_cast<double>(excess) / md;
  const double centre = static_cast<double>(first) + (md - 1.0) / 2.0;
  const double flat_edge = (1.0 - quantized) / 2.0;

  ComplexBlock h(g.l());
  for (std::size_t k = first - excess; k < (block + 1) * m + excess; ++k) {
    const double f = std::abs((static_cast<double>(k) - centre) / md);
    double rc = 1.0;
    if (f > flat_edge) {
      rc = 0.5 * (1.0 + std::cos(std::numbers::pi / quantized * (f - flat_edge)));
    }
    h[k] = std::sqrt(rc);
  }
  return SpectralWindow(WindowKind::RootRaisedCosine, alpha, block, std::move(h));
}

SpectralWindow make_window(const SystemGeometry& g, const ShapingConfig& config,
                           NyquistPolicy policy) {
  if (config.kind == WindowKind::Rectangular) {
    return rectangular_window(g, config.user_block_index.value_or(0));
  }
  return rrc_window(g, config.alpha, config.user_block_index.value_or(1), policy);
}

}  // namespace scfdma
