#include "scfdma/equalize.hpp"

#include <algorithm>
#include <string>

namespace scfdma {

namespace {

void check_lengths(const SpectralWindow& H, const ChannelRealization& ch,
                   const SystemGeometry& g) {
  if (H.response().size() != g.l() || ch.extended_response().size() != g.l()) {
    throw std::invalid_argument("equalizer: window or channel does not match the geometry");
  }
}

EqualizerResponse build(const SpectralWindow& H, const ChannelRealization& ch,
                        const SystemGeometry& g, const std::vector<double>& denominators,
                        EqualizerKind kind) {
  const auto& h = H.response();
  const auto& c = ch.extended_response();
  EqualizerResponse eq;
  eq.kind = kind;
  eq.G.assign(g.l(), cplx{});
  for (std::size_t k : H.support()) {
    eq.G[k] = std::conj(h[k] * c[k]) / denominators[k % g.m()];
  }
  eq.g_time = inverse_dft(eq.G);
  return eq;
}

}  // namespace

EqualizerResponse EqualizerResponse::custom(ComplexBlock G) {
  EqualizerResponse eq;
  eq.g_time = inverse_dft(G);
  eq.G = std::move(G);
  eq.kind = EqualizerKind::Custom;
  return eq;
}

SingularSubchannel::SingularSubchannel(std::size_t r)
    : std::runtime_error("zero forcing: subchannel " + std::to_string(r) +
                         " is nulled on every alias"),
      r_(r) {}

std::vector<double> alias_energy(const SpectralWindow& H, const ChannelRealization& ch,
                                 const SystemGeometry& g) {
  check_lengths(H, ch, g);
  const auto& h = H.response();
  const auto& c = ch.extended_response();
  std::vector<double> d(g.m(), 0.0);
  for (std::size_t k = 0; k < g.l(); ++k) d[k % g.m()] += std::norm(h[k] * c[k]);
  return d;
}

EqualizerResponse zero_forcing(const SpectralWindow& H, const ChannelRealization& ch,
                               const SystemGeometry& g) {
  const auto d = alias_energy(H, ch, g);
  const double peak = *std::max_element(d.begin(), d.end());
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (!(d[r] > kSingularThreshold * peak)) throw SingularSubchannel(r);
  }
  return build(H, ch, g, d, EqualizerKind::ZF);
}

EqualizerResponse mmse(const SpectralWindow& H, const ChannelRealization& ch,
                       const SystemGeometry& g, double es_n0) {
  if (!(es_n0 > 0.0)) throw std::invalid_argument("mmse: Es/N0 must be positive");
  auto d = alias_energy(H, ch, g);
  double total = 0.0;
  for (double v : d) total += v;
  if (!(total > 0.0)) {
    throw std::invalid_argument("mmse: channel is identically zero on the window support");
  }
  const double kappa = total / (static_cast<double>(g.m()) * es_n0);
  for (double& v : d) v += kappa;
  return build(H, ch, g, d, EqualizerKind::MMSE);
}

OverallResponse overall_response(const SpectralWindow& H, const ChannelRealization& ch,
                                 const EqualizerResponse& G, const SystemGeometry& g) {
  check_lengths(H, ch, g);
  if (G.G.size() != g.l()) throw std::invalid_argument("overall_response: G length != L");
  const auto& h = H.response();
  const auto& c = ch.extended_response();
  OverallResponse out;
  out.P.resize(g.l());
  for (std::size_t k = 0; k < g.l(); ++k) out.P[k] = h[k] * c[k] * G.G[k];
  out.p_time = inverse_dft(out.P);
  out.decimated = downsample(out.p_time, g.lm());
  return out;
}

ComplexBlock alias_sums(const OverallResponse& P, const SystemGeometry& g) {
  ComplexBlock sums(g.m());
  for (std::size_t k = 0; k < P.P.size(); ++k) sums[k % g.m()] += P.P[k];
  return sums;
}

}  // namespace scfdma
