#include "scfdma/validate.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "scfdma/channel.hpp"
#include "scfdma/dft.hpp"
#include "scfdma/equalize.hpp"
#include "scfdma/kernels.hpp"
#include "scfdma/rng.hpp"
#include "scfdma/shaping.hpp"
#include "scfdma/sinr.hpp"
#include "scfdma/txchain.hpp"

namespace scfdma {

namespace {

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_abs(std::span<const cplx> a) {
  double worst = 0.0;
  for (const cplx& v : a) worst = std::max(worst, std::abs(v));
  return worst;
}

ComplexBlock gaussian_block(RngStream& rng, std::size_t n) { return awgn(rng, n, {1.0}); }

std::string label(const SystemGeometry& g) {
  return fmt::format("M={} N={} Ng={}", g.m(), g.n(), g.cp());
}

/// Both window kinds; RRC waives the sampling condition so toy geometries qualify.
std::vector<SpectralWindow> windows_for(const SystemGeometry& g, NyquistPolicy policy) {
  std::vector<SpectralWindow> out{rectangular_window(g)};
  if (policy == NyquistPolicy::Waive || nyquist_check(g, 0.35)) {
    out.push_back(rrc_window(g, 0.35, 1, policy));
  }
  return out;
}

/// Rayleigh taps on every delay 0..cp with a decaying profile.
ChannelRealization random_channel(RngStream& rng, const SystemGeometry& g) {
  std::vector<Tap> taps;
  double total = 0.0;
  for (std::size_t d = 0; d <= g.cp(); ++d) total += std::exp(-static_cast<double>(d));
  for (std::size_t d = 0; d <= g.cp(); ++d) {
    taps.push_back({d, rng.circular_gaussian(std::exp(-static_cast<double>(d)) / total)});
  }
  return ChannelRealization::from_taps(std::move(taps), g);
}

struct Tracker {
  double worst = 0.0;
  std::string where;

  void update(double value, const std::string& context) {
    if (!(value <= worst)) {
      worst = value;
      where = context;
    }
  }
};

CheckResult finish(std::string name, const Tracker& t, double tolerance) {
  CheckResult r;
  r.name = std::move(name);
  r.worst = t.worst;
  r.tolerance = tolerance;
  r.passed = t.worst < tolerance;
  r.detail = t.where;
  return r;
}

CheckResult check_noble(const ValidationOptions& o) {
  Tracker t;
  for (const auto& g : o.geometries) {
    RngStream rng(o.seed, {stream::kValidation, 1, g.m(), g.n()});
    for (std::size_t trial = 0; trial < 4; ++trial) {
      const ComplexBlock x = gaussian_block(rng, g.m());
      const ComplexBlock up_lhs = forward_dft(upsample(x, g.lm()));
      const ComplexBlock up_rhs = repeat(forward_dft(x), g.lm());
      t.update(max_abs_diff(up_lhs, up_rhs) / max_abs(up_rhs), label(g) + " up-sampling");

      const ComplexBlock d = gaussian_block(rng, g.l());
      const ComplexBlock down_lhs = downsample(inverse_dft(d), g.ln());
      const ComplexBlock down_rhs = inverse_dft(stack(d, g.n()));
      t.update(max_abs_diff(down_lhs, down_rhs) / max_abs(down_rhs), label(g) + " decimation");
    }
  }
  return finish("noble identities", t, 1e-10);
}

CheckResult check_paths(const ValidationOptions& o) {
  Tracker t;
  for (const auto& g : o.geometries) {
    for (const SpectralWindow& H : windows_for(g, NyquistPolicy::Waive)) {
      const auto G = EqualizerResponse::custom(H.response());
      RngStream rng(o.seed, {stream::kValidation, 2, g.m(), g.n(), H.support().size()});
      const std::string where =
          label(g) + (H.kind() == WindowKind::Rectangular ? " rect" : " rrc");
      for (std::size_t f = 0; f < o.frames; ++f) {
        const SymbolBlock xb = qpsk_block(rng, g.m());
        const TimeFrame a = tx_reference(xb, H, g);
        const TimeFrame b = tx_time_equivalent(xb, H, g);
        t.update(max_abs_diff(a.samples, b.samples), where + " tx");
        const TimeFrame r{gaussian_block(rng, g.n()), false};
        t.update(max_abs_diff(rx_reference(r, G, g), rx_time_equivalent(r, G, g)), where + " rx");
      }
    }
  }
  return finish("path equivalence", t, 1e-9);
}

CheckResult check_cp(const ValidationOptions& o) {
  Tracker t;
  for (const auto& g : o.geometries) {
    RngStream rng(o.seed, {stream::kValidation, 3, g.m(), g.n()});
    const SpectralWindow H = rectangular_window(g);
    const std::size_t frames = std::max<std::size_t>(o.frames / 5, 2);
    std::vector<ChannelRealization> channels;
    std::vector<ComplexBlock> bodies;
    ComplexBlock stream;
    for (std::size_t f = 0; f < frames; ++f) {
      channels.push_back(random_channel(rng, g));
      bodies.push_back(tx_reference(qpsk_block(rng, g.m()), H, g).samples);
      const TimeFrame framed = add_cp({bodies.back(), false}, g);
      stream.insert(stream.end(), framed.samples.begin(), framed.samples.end());
    }
    const ComplexBlock received = apply_block_fading(stream, channels, g);
    for (std::size_t f = 0; f < frames; ++f) {
      const TimeFrame framed{
          ComplexBlock(received.begin() + static_cast<long>(f * g.nt()),
                       received.begin() + static_cast<long>((f + 1) * g.nt())),
          true};
      const ComplexBlock expected = circular_channel(bodies[f], channels[f]);
      t.update(max_abs_diff(remove_cp(framed, g).samples, expected), label(g));
    }
  }
  return finish("cp circularization", t, 1e-9);
}

CheckResult check_zf(const ValidationOptions& o) {
  Tracker t;
  for (const auto& g : o.geometries) {
    for (const SpectralWindow& H : windows_for(g, NyquistPolicy::Enforce)) {
      RngStream rng(o.seed, {stream::kValidation, 4, g.m(), g.n(), H.support().size()});
      for (std::size_t i = 0; i < o.realizations; ++i) {
        const ChannelRealization ch = random_channel(rng, g);
        const EqualizerResponse G = zero_forcing(H, ch, g);
        const OverallResponse P = overall_response(H, ch, G, g);
        for (const cplx& s : alias_sums(P, g)) t.update(std::abs(s - 1.0), label(g) + " sums");
        const double pu = useful_power(P, 1.0, g);
        t.update(interference_power(P, 1.0, g) / pu, label(g) + " interference");
      }
    }
  }
  return finish("zf property", t, 1e-10);
}

CheckResult check_sinr_forms(const ValidationOptions& o) {
  Tracker t;
  for (const auto& g : o.geometries) {
    for (const SpectralWindow& H : windows_for(g, NyquistPolicy::Enforce)) {
      RngStream rng(o.seed, {stream::kValidation, 5, g.m(), g.n(), H.support().size()});
      for (std::size_t i = 0; i < o.realizations; ++i) {
        const ChannelRealization ch = random_channel(rng, g);
        for (double db : {0.0, 10.0, 20.0, 30.0}) {
          const LinkBudget link = LinkBudget::from_es_n0(db_to_linear(db), 1.0, H, ch, g);
          for (const EqualizerResponse& G : {zero_forcing(H, ch, g), mmse(H, ch, g, link.es_n0)}) {
            const OverallResponse P = overall_response(H, ch, G, g);
            const double eq22 = analytical_sinr(P, G, H, ch, g, link);
            const double eq20 = sinr_terms(P, G, g, link).sinr();
            t.update(std::abs(eq22 - eq20) / eq22, label(g));
          }
        }
      }
    }
  }
  return finish("sinr form consistency", t, 1e-12);
}

CheckResult check_noise(const ValidationOptions& o) {
  Tracker t;
  for (const auto& g : o.geometries) {
    RngStream rng(o.seed, {stream::kValidation, 6, g.m(), g.n()});
    const SpectralWindow H = rectangular_window(g);
    const ChannelRealization ch = random_channel(rng, g);
    const EqualizerResponse G = mmse(H, ch, g, 10.0);
    const EquivalentNoiseOperator op(G, g);
    const double sigma_w2 = 0.5;
    double acc = 0.0;
    double pipeline_gap = 0.0;
    for (std::size_t i = 0; i < o.noise_draws; ++i) {
      const ComplexBlock w = awgn(rng, g.n(), {sigma_w2});
      const ComplexBlock wt = op.apply(w);
      if (i < 8) pipeline_gap = std::max(pipeline_gap, max_abs_diff(wt, equivalent_noise(w, G, g)));
      acc += kernels::energy(wt);
    }
    const double measured = acc / static_cast<double>(o.noise_draws * g.m());
    const double expected = noise_power(G, g, sigma_w2);
    t.update(std::abs(measured / expected - 1.0), label(g));
    if (pipeline_gap > 1e-10) t.update(1.0, label(g) + " operator differs from pipeline");
  }
  return finish("equivalent noise variance", t, 0.01);
}

}  // namespace

std::vector<SystemGeometry> default_validation_geometries() {
  return {derive_geometry(4, 8, 2), derive_geometry(6, 8, 2), derive_geometry(10, 512, 31),
          derive_geometry(12, 512, 31)};
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  return {check_noble(options),  check_paths(options),      check_cp(options),
          check_zf(options),     check_sinr_forms(options), check_noise(options)};
}

}  // namespace scfdma
