#include "scfdma/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "scfdma/kernels.hpp"
#include "scfdma/rng.hpp"
#include "scfdma/sinr.hpp"
#include "scfdma/txchain.hpp"

namespace scfdma {

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

constexpr std::size_t kMaxRedraws = 64;

struct DrawnChannel {
  ChannelRealization channel;
  std::size_t attempt = 0;
};

DrawnChannel draw_channel(const SinrCampaign& c, const SpectralWindow& H, std::size_t index) {
  if (c.channel.kind == ChannelSource::Kind::Flat) return {flat_channel(c.geometry), 0};
  for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    RngStream rng(c.seed, {stream::kSinrRealization, index, attempt, 0});
    ChannelRealization ch = realize(*c.channel.profile, rng, c.geometry, c.channel.normalize);
    const auto d = alias_energy(H, ch, c.geometry);
    const double peak = *std::max_element(d.begin(), d.end());
    const bool singular = std::any_of(d.begin(), d.end(),
                                      [&](double v) { return !(v > kSingularThreshold * peak); });
    if (!singular) return {std::move(ch), attempt};
  }
  throw std::runtime_error("sinr campaign: channel draws keep nulling a subchannel");
}

struct RealizationResult {
  std::size_t dropped = 0;
  // [equalizer][es_n0]
  std::vector<std::vector<RealizationSample>> samples;
};

RealizationResult run_realization(const SinrCampaign& c, const SpectralWindow& H,
                                  std::size_t index) {
  const SystemGeometry& g = c.geometry;
  DrawnChannel drawn = draw_channel(c, H, index);
  const ChannelRealization& ch = drawn.channel;

  RngStream rng(c.seed, {stream::kSinrRealization, index, drawn.attempt, 1});
  std::vector<SymbolBlock> blocks;
  std::vector<ComplexBlock> unit_noise;
  blocks.reserve(c.frames_per_realization);
  unit_noise.reserve(c.frames_per_realization);
  for (std::size_t f = 0; f < c.frames_per_realization; ++f) {
    blocks.push_back(qpsk_block(rng, g.m(), c.sigma_x2));
    unit_noise.push_back(awgn(rng, g.n(), NoiseModel{1.0}));
  }

  RealizationResult result;
  result.dropped = drawn.attempt;
  result.samples.resize(c.equalizers.size());
  ComplexBlock w_tilde(g.m());
  for (std::size_t e = 0; e < c.equalizers.size(); ++e) {
    const EqualizerKind kind = c.equalizers[e];
    std::optional<EqualizerResponse> fixed;
    std::optional<EquivalentNoiseOperator> fixed_op;
    if (kind == EqualizerKind::ZF) {
      fixed = zero_forcing(H, ch, g);
      fixed_op.emplace(*fixed, g);
    }
    for (double db : c.es_n0_db) {
      const double es_n0 = db_to_linear(db);
      const LinkBudget link = LinkBudget::from_es_n0(es_n0, c.sigma_x2, H, ch, g);
      const EqualizerResponse G = fixed ? *fixed : mmse(H, ch, g, es_n0);
      const EquivalentNoiseOperator op = fixed_op ? *fixed_op : EquivalentNoiseOperator(G, g);
      const OverallResponse P = overall_response(H, ch, G, g);
      const SinrTerms terms = sinr_terms(P, G, g, link);

      EmpiricalPowers acc;
      const double amplitude = std::sqrt(link.sigma_w2);
      for (std::size_t f = 0; f < c.frames_per_realization; ++f) {
        op.apply(unit_noise[f], w_tilde);
        for (cplx& v : w_tilde) v *= amplitude;
        acc.add(end_to_end_simplified(blocks[f], P, w_tilde, g));
      }
      RealizationSample s;
      s.analytical = analytical_sinr(P, G, H, ch, g, link);
      s.interference_free = acc.interference_free();
      s.empirical = acc.sinr().value_or(std::numeric_limits<double>::infinity());
      s.useful = terms.useful;
      s.interference = terms.interference;
      s.noise = terms.noise;
      result.samples[e].push_back(s);
    }
  }
  return result;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

SinrReport run_sinr_campaign(const SinrCampaign& c) {
  if (c.realizations == 0 || c.frames_per_realization == 0) {
    throw std::invalid_argument("sinr campaign: realizations and frames must be positive");
  }
  if (c.equalizers.empty() || c.es_n0_db.empty()) {
    throw std::invalid_argument("sinr campaign: empty equalizer list or Es/N0 grid");
  }
  if (c.channel.kind == ChannelSource::Kind::Profile && !c.channel.profile) {
    throw std::invalid_argument("sinr campaign: profile channel without a profile");
  }
  const SpectralWindow H = make_window(c.geometry, c.shaping);

  std::vector<RealizationResult> per_realization(c.realizations);
  parallel_for(c.realizations, c.threads,
               [&](std::size_t i) { per_realization[i] = run_realization(c, H, i); });

  SinrReport report;
  for (const auto& r : per_realization) report.dropped_realizations += r.dropped;
  const double count = static_cast<double>(c.realizations);
  for (std::size_t e = 0; e < c.equalizers.size(); ++e) {
    for (std::size_t p = 0; p < c.es_n0_db.size(); ++p) {
      SinrPoint point;
      point.equalizer = c.equalizers[e];
      point.es_n0_db = c.es_n0_db[p];
      std::vector<double> analytical;
      std::vector<double> empirical;
      std::vector<double> analytical_db;
      std::vector<double> empirical_db;
      for (const auto& r : per_realization) {
        const RealizationSample& s = r.samples[e][p];
        point.samples.push_back(s);
        analytical.push_back(s.analytical);
        empirical.push_back(s.empirical);
        analytical_db.push_back(linear_to_db(s.analytical));
        empirical_db.push_back(linear_to_db(s.empirical));
        point.useful += s.useful / count;
        point.interference += s.interference / count;
        point.noise += s.noise / count;
        if (s.interference_free) ++point.interference_free;
      }
      const double emp_mean = mean(empirical);
      point.analytical_db = linear_to_db(mean(analytical));
      point.empirical_db = linear_to_db(emp_mean);
      point.analytical_db_mean = mean(analytical_db);
      point.empirical_db_mean = mean(empirical_db);
      if (c.realizations >= 2 && std::isfinite(emp_mean)) {
        double var = 0.0;
        for (double x : empirical) var += (x - emp_mean) * (x - emp_mean);
        var /= count - 1.0;
        const double half = 1.96 * std::sqrt(var / count);
        const double upper = linear_to_db(emp_mean + half) - point.empirical_db;
        const double lower = half < emp_mean ? point.empirical_db - linear_to_db(emp_mean - half)
                                             : std::numeric_limits<double>::infinity();
        point.ci_halfwidth_db = std::max(upper, lower);
      } else {
        point.ci_halfwidth_db = std::numeric_limits<double>::quiet_NaN();
      }
      report.points.push_back(std::move(point));
    }
  }
  return report;
}

PsdResult simulate_psd(const PsdSimulation& sim, NyquistPolicy policy) {
  const SystemGeometry& g = sim.geometry;
  if (sim.frames == 0) throw std::invalid_argument("psd: frame count must be positive");
  const SpectralWindow H = make_window(g, sim.shaping, policy);
  WelchAccumulator welch(sim.welch);

  constexpr std::size_t kBatch = 256;
  std::vector<ComplexBlock> batch;
  double energy = 0.0;
  for (std::size_t first = 0; first < sim.frames; first += kBatch) {
    const std::size_t count = std::min(kBatch, sim.frames - first);
    batch.assign(count, {});
    parallel_for(count, sim.threads, [&](std::size_t i) {
      RngStream rng(sim.seed, {stream::kPsdFrames, first + i});
      const SymbolBlock xb = qpsk_block(rng, g.m(), sim.sigma_x2);
      batch[i] = add_cp(tx_reference(xb, H, g), g).samples;
    });
    for (const auto& frame : batch) {
      energy += kernels::energy(frame);
      welch.push(frame);
    }
  }

  PsdResult out;
  out.estimated = welch.result();
  out.analytical =
      analytical_psd(H, g, PulseShape::rectangular(g.nt()), out.estimated.freqs, sim.sigma_x2);
  out.mean_power = energy / static_cast<double>(sim.frames * g.nt());
  return out;
}

}  // namespace scfdma
