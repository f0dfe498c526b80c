#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scfdma/channel.hpp"
#include "scfdma/equalize.hpp"
#include "scfdma/geometry.hpp"
#include "scfdma/shaping.hpp"
#include "scfdma/txchain.hpp"

namespace scfdma {

double db_to_linear(double db);
double linear_to_db(double linear);

/// sum_k |H_k C~_k|^2 over the full length L.
double window_channel_energy(const SpectralWindow& H, const ChannelRealization& ch);

/// sigma_w2 = sigma_x2 sum|H C~|^2 / (N Es/N0). Linear Es/N0; infinity maps to 0.
double es_n0_to_sigma_w2(double es_n0, double sigma_x2, const SpectralWindow& H,
                         const ChannelRealization& ch, const SystemGeometry& g);
double sigma_w2_to_es_n0(double sigma_w2, double sigma_x2, const SpectralWindow& H,
                         const ChannelRealization& ch, const SystemGeometry& g);

struct LinkBudget {
  double es_n0 = 1.0;  // linear
  double sigma_x2 = 1.0;
  double sigma_w2 = 0.0;

  static LinkBudget from_es_n0(double es_n0, double sigma_x2, const SpectralWindow& H,
                               const ChannelRealization& ch, const SystemGeometry& g);
};

/// (sigma_x2 / M^2) |sum_k P_k|^2.
double useful_power(const OverallResponse& P, double sigma_x2, const SystemGeometry& g);

/// (sigma_x2 / M) sum_r |sum_l P_{lM+r}|^2.
double received_power(const OverallResponse& P, double sigma_x2, const SystemGeometry& g);

/// received - useful, with round-off below 1e-12 useful clamped to 0.
double interference_power(const OverallResponse& P, double sigma_x2, const SystemGeometry& g);

/// (sigma_w2 N / M^2) sum_k |G_k|^2.
double noise_power(const EqualizerResponse& G, const SystemGeometry& g, double sigma_w2);

struct SinrTerms {
  double useful = 0.0;
  double interference = 0.0;
  double noise = 0.0;

  double sinr() const { return useful / (interference + noise); }
};

SinrTerms sinr_terms(const OverallResponse& P, const EqualizerResponse& G,
                     const SystemGeometry& g, const LinkBudget& link);

/// |sum P|^2 / (M sum_r |sum_l P|^2 - |sum P|^2 + (Es/N0)^{-1} sum|H C~|^2 sum|G|^2).
/// Throws std::domain_error when the system is identically zero.
double analytical_sinr(const OverallResponse& P, const EqualizerResponse& G,
                       const SpectralWindow& H, const ChannelRealization& ch,
                       const SystemGeometry& g, const LinkBudget& link);

/// Dense M x N form of the receive chain applied to noise:
/// w~(n) = L_M sum_m w(m) g((n L_M - m L_N) mod L).
class EquivalentNoiseOperator {
 public:
  EquivalentNoiseOperator(const EqualizerResponse& G, const SystemGeometry& g);

  void apply(std::span<const cplx> w, std::span<cplx> out) const;
  ComplexBlock apply(std::span<const cplx> w) const;

 private:
  std::size_t m_;
  std::size_t n_;
  ComplexBlock rows_;  // row-major M x N
};

/// Running sums of |x_u|^2, |x_i|^2, |w~|^2 over symbol positions and frames.
struct EmpiricalPowers {
  double useful = 0.0;
  double interference = 0.0;
  double noise = 0.0;
  std::size_t samples = 0;

  void add(const Decomposition& d);
  EmpiricalPowers& operator+=(const EmpiricalPowers& other);

  /// True when interference and noise are both negligible against the useful power.
  bool interference_free() const;
  /// Ratio of accumulated powers; empty when interference_free().
  std::optional<double> sinr() const;
};

}  // namespace scfdma
