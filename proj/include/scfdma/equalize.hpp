#pragma once

#include <cstddef>
#include <stdexcept>

#include "scfdma/channel.hpp"
#include "scfdma/dft.hpp"
#include "scfdma/geometry.hpp"
#include "scfdma/shaping.hpp"

namespace scfdma {

enum class EqualizerKind { ZF, MMSE, Custom };

/// Joint demapper/equalizer over length L with its time filter.
struct EqualizerResponse {
  ComplexBlock G;
  ComplexBlock g_time;
  EqualizerKind kind = EqualizerKind::Custom;

  static EqualizerResponse custom(ComplexBlock G);
};

/// Raised by zero_forcing when every alias of bin r is nulled.
class SingularSubchannel : public std::runtime_error {
 public:
  explicit SingularSubchannel(std::size_t r);
  std::size_t subchannel() const { return r_; }

 private:
  std::size_t r_;
};

/// A subchannel is singular when its alias energy is at most this fraction of
/// the strongest one.
inline constexpr double kSingularThreshold = 1e-15;

/// Alias-class energies d_r = sum_s |H_{sM+r} C~_{sM+r}|^2, length M.
std::vector<double> alias_energy(const SpectralWindow& H, const ChannelRealization& ch,
                                 const SystemGeometry& g);

/// G_k = H_k* C~_k* / d_<k>_M on the window support, zero elsewhere.
EqualizerResponse zero_forcing(const SpectralWindow& H, const ChannelRealization& ch,
                               const SystemGeometry& g);

/// G_k = H_k* C~_k* / (d_<k>_M + kappa), kappa = (1/M)(N0/Es) sum_k |H_k C~_k|^2.
/// `es_n0` is linear.
EqualizerResponse mmse(const SpectralWindow& H, const ChannelRealization& ch,
                       const SystemGeometry& g, double es_n0);

struct OverallResponse {
  ComplexBlock P;          // H C~ G, length L
  ComplexBlock p_time;     // IDFT_L(P)
  ComplexBlock decimated;  // p(n L_M), length M
};

OverallResponse overall_response(const SpectralWindow& H, const ChannelRealization& ch,
                                 const EqualizerResponse& G, const SystemGeometry& g);

/// Stacked sums sum_s P_{sM+r}, length M.
ComplexBlock alias_sums(const OverallResponse& P, const SystemGeometry& g);

}  // namespace scfdma
