#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "scfdma/channel.hpp"
#include "scfdma/equalize.hpp"
#include "scfdma/geometry.hpp"
#include "scfdma/psd.hpp"
#include "scfdma/shaping.hpp"

namespace scfdma {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must
/// be written to per-index slots; callers reduce them in index order.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

struct ChannelSource {
  enum class Kind { Profile, Flat };
  Kind kind = Kind::Profile;
  std::optional<TapProfile> profile;  // required for Kind::Profile
  bool normalize = true;
};

struct SinrCampaign {
  SystemGeometry geometry;
  ShapingConfig shaping;
  ChannelSource channel;
  std::vector<EqualizerKind> equalizers{EqualizerKind::ZF};
  std::vector<double> es_n0_db;
  std::size_t realizations = 1;
  std::size_t frames_per_realization = 1;
  std::uint64_t seed = 1;
  double sigma_x2 = 1.0;
  std::size_t threads = 1;
};

/// Per realization values at one Es/N0 point for one equalizer.
struct RealizationSample {
  double analytical = 0.0;     // linear SINR
  double empirical = 0.0;      // linear SINR; infinity when interference-free
  bool interference_free = false;
  double useful = 0.0;         // analytical per-term powers
  double interference = 0.0;
  double noise = 0.0;
};

struct SinrPoint {
  EqualizerKind equalizer = EqualizerKind::ZF;
  double es_n0_db = 0.0;
  double analytical_db = 0.0;         // dB of the linear mean
  double empirical_db = 0.0;          // dB of the linear mean
  double ci_halfwidth_db = 0.0;       // NaN with fewer than two realizations
  double analytical_db_mean = 0.0;    // mean of per-realization dB values
  double empirical_db_mean = 0.0;
  double useful = 0.0;
  double interference = 0.0;
  double noise = 0.0;
  std::size_t interference_free = 0;  // realizations flagged by the guard
  std::vector<RealizationSample> samples;
};

struct SinrReport {
  std::vector<SinrPoint> points;  // equalizer-major, then Es/N0 order
  std::size_t dropped_realizations = 0;
};

/// Monte Carlo over block-fading realizations. Each realization draws its
/// channel, symbols and unit-variance channel noise from its own stream and
/// reuses them across the Es/N0 grid and the equalizers. Realizations whose
/// channel makes zero forcing singular are redrawn and counted.
SinrReport run_sinr_campaign(const SinrCampaign& campaign);

struct PsdSimulation {
  SystemGeometry geometry;
  ShapingConfig shaping;
  std::size_t frames = 1;
  WelchParams welch;
  std::uint64_t seed = 1;
  double sigma_x2 = 1.0;
  std::size_t threads = 1;
};

struct PsdResult {
  PsdCurve analytical;
  PsdCurve estimated;
  double mean_power = 0.0;  // measured over the CP-framed stream
};

/// Welch estimate of a CP-framed QPSK stream and the analytical PSD on the same grid.
PsdResult simulate_psd(const PsdSimulation& sim, NyquistPolicy policy = NyquistPolicy::Enforce);

}  // namespace scfdma
