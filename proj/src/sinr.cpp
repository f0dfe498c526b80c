#include "scfdma/sinr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "scfdma/kernels.hpp"

namespace scfdma {

namespace {

cplx total_sum(const OverallResponse& P) {
  cplx s{};
  for (const cplx& v : P.P) s += v;
  return s;
}

double alias_power(const OverallResponse& P, const SystemGeometry& g) {
  return kernels::energy(alias_sums(P, g));
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double window_channel_energy(const SpectralWindow& H, const ChannelRealization& ch) {
  const auto& h = H.response();
  const auto& c = ch.extended_response();
  if (h.size() != c.size()) throw std::invalid_argument("window and channel lengths differ");
  double e = 0.0;
  for (std::size_t k : H.support()) e += std::norm(h[k] * c[k]);
  return e;
}

double es_n0_to_sigma_w2(double es_n0, double sigma_x2, const SpectralWindow& H,
                         const ChannelRealization& ch, const SystemGeometry& g) {
  if (!(es_n0 > 0.0)) throw std::invalid_argument("Es/N0 must be positive");
  const double energy = window_channel_energy(H, ch);
  if (!(energy > 0.0)) throw std::invalid_argument("channel and window do not overlap");
  if (std::isinf(es_n0)) return 0.0;
  return sigma_x2 * energy / (static_cast<double>(g.n()) * es_n0);
}

double sigma_w2_to_es_n0(double sigma_w2, double sigma_x2, const SpectralWindow& H,
                         const ChannelRealization& ch, const SystemGeometry& g) {
  const double energy = window_channel_energy(H, ch);
  if (sigma_w2 == 0.0) return std::numeric_limits<double>::infinity();
  return sigma_x2 * energy / (static_cast<double>(g.n()) * sigma_w2);
}

LinkBudget LinkBudget::from_es_n0(double es_n0, double sigma_x2, const SpectralWindow& H,
                                  const ChannelRealization& ch, const SystemGeometry& g) {
  return {es_n0, sigma_x2, es_n0_to_sigma_w2(es_n0, sigma_x2, H, ch, g)};
}

double useful_power(const OverallResponse& P, double sigma_x2, const SystemGeometry& g) {
  const double m = static_cast<double>(g.m());
  return sigma_x2 / (m * m) * std::norm(total_sum(P));
}

double received_power(const OverallResponse& P, double sigma_x2, const SystemGeometry& g) {
  return sigma_x2 / static_cast<double>(g.m()) * alias_power(P, g);
}

double interference_power(const OverallResponse& P, double sigma_x2, const SystemGeometry& g) {
  const double m = static_cast<double>(g.m());
  const double sum2 = std::norm(total_sum(P));
  const double value = sigma_x2 / (m * m) * (m * alias_power(P, g) - sum2);
  const double useful = sigma_x2 / (m * m) * sum2;
  if (value < 0.0 && -value < 1e-12 * useful) return 0.0;
  return value;
}

double noise_power(const EqualizerResponse& G, const SystemGeometry& g, double sigma_w2) {
  const double m = static_cast<double>(g.m());
  return sigma_w2 * static_cast<double>(g.n()) / (m * m) * kernels::energy(G.G);
}

SinrTerms sinr_terms(const OverallResponse& P, const EqualizerResponse& G,
                     const SystemGeometry& g, const LinkBudget& link) {
  return {useful_power(P, link.sigma_x2, g), interference_power(P, link.sigma_x2, g),
          noise_power(G, g, link.sigma_w2)};
}

double analytical_sinr(const OverallResponse& P, const EqualizerResponse& G,
                       const SpectralWindow& H, const ChannelRealization& ch,
                       const SystemGeometry& g, const LinkBudget& link) {
  const double m = static_cast<double>(g.m());
  const double sum2 = std::norm(total_sum(P));
  const double noise = window_channel_energy(H, ch) * kernels::energy(G.G) / link.es_n0;
  const double denominator = m * alias_power(P, g) - sum2 + noise;
  if (!(denominator > 0.0)) throw std::domain_error("analytical_sinr: degenerate system");
  return sum2 / denominator;
}

EquivalentNoiseOperator::EquivalentNoiseOperator(const EqualizerResponse& G,
                                                 const SystemGeometry& g)
    : m_(g.m()), n_(g.n()), rows_(g.m() * g.n()) {
  if (G.g_time.size() != g.l()) throw std::invalid_argument("noise operator: g length != L");
  const std::size_t l = g.l();
  const double lm = static_cast<double>(g.lm());
  for (std::size_t n = 0; n < m_; ++n) {
    for (std::size_t m = 0; m < n_; ++m) {
      const std::size_t index = (n * g.lm() + l - (m * g.ln()) % l) % l;
      rows_[n * n_ + m] = lm * G.g_time[index];
    }
  }
}

void EquivalentNoiseOperator::apply(std::span<const cplx> w, std::span<cplx> out) const {
  if (w.size() != n_ || out.size() != m_) {
    throw std::invalid_argument("noise operator: expects N inputs and M outputs");
  }
  const std::span<const cplx> rows(rows_);
  for (std::size_t n = 0; n < m_; ++n) out[n] = kernels::dot(rows.subspan(n * n_, n_), w);
}

ComplexBlock EquivalentNoiseOperator::apply(std::span<const cplx> w) const {
  ComplexBlock out(m_);
  apply(w, out);
  return out;
}

void EmpiricalPowers::add(const Decomposition& d) {
  useful += kernels::energy(d.useful);
  interference += kernels::energy(d.interference);
  noise += kernels::energy(d.noise);
  samples += d.useful.size();
}

EmpiricalPowers& EmpiricalPowers::operator+=(const EmpiricalPowers& other) {
  useful += other.useful;
  interference += other.interference;
  noise += other.noise;
  samples += other.samples;
  return *this;
}

bool EmpiricalPowers::interference_free() const {
  return interference + noise <= 1e-20 * useful;
}

std::optional<double> EmpiricalPowers::sinr() const {
  if (interference_free()) return std::nullopt;
  return useful / (interference + noise);
}

}  // namespace scfdma
