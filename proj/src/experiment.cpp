#include "scfdma/experiment.hpp"

#include <cmath>
#include <fmt/format.h>
#include <ostream>
#include <sstream>

#include "scfdma/campaign.hpp"
#include "scfdma/dft.hpp"
#include "scfdma/validate.hpp"

namespace scfdma {

namespace {

std::string shaping_name(WindowKind k) {
  return k == WindowKind::Rectangular ? "rect" : "rrc";
}

std::string welch_window_name(SegmentWindow w) {
  return w == SegmentWindow::Rectangular ? "rect" : "hann";
}

std::string db(double linear) {
  if (std::isnan(linear)) return "nan";
  if (linear <= 0.0) return "-inf";
  return fmt::format("{:.6f}", 10.0 * std::log10(linear));
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.9g}", v);
}

std::vector<EqualizerKind> equalizer_list(const std::string& name) {
  if (name == "zf") return {EqualizerKind::ZF};
  if (name == "mmse") return {EqualizerKind::MMSE};
  return {EqualizerKind::ZF, EqualizerKind::MMSE};
}

}  // namespace

EsN0Grid EsN0Grid::parse(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("esn0: '" + text + "' is not start:step:stop in dB");
    }
  }
  if (parts.size() == 1) return {parts[0], 1.0, parts[0]};
  if (parts.size() != 3) throw ConfigError("esn0: '" + text + "' is not start:step:stop in dB");
  return {parts[0], parts[1], parts[2]};
}

std::vector<double> EsN0Grid::values() const {
  std::vector<double> v;
  if (start == stop) return {start};
  const double count = std::floor((stop - start) / step + 1e-9);
  for (long i = 0; i <= static_cast<long>(count); ++i) v.push_back(start + step * static_cast<double>(i));
  return v;
}

void ExperimentConfig::apply_preset(const std::string& name) {
  if (name == "lte5") {
    m = 10;
    n = 512;
    cp = 31;
  } else if (name == "toy") {
    m = 4;
    n = 8;
    cp = 2;
  } else {
    throw ConfigError("preset: unknown preset '" + name + "' (lte5, toy)");
  }
  preset = name;
}

void ExperimentConfig::validate() const {
  if (m == 0 || n == 0) throw ConfigError("geometry: M and N must be positive");
  if (m > n) throw ConfigError(fmt::format("geometry: M = {} exceeds N = {}", m, n));
  const SystemGeometry g = geometry();
  if (shaping == WindowKind::RootRaisedCosine) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw ConfigError("rolloff: must lie in [0, 1]");
    if (!nyquist_check(g, rolloff)) {
      throw ConfigError(fmt::format("shaping: N = {} violates N >= 2(1 + alpha) M = {}", n,
                                    2.0 * (1.0 + rolloff) * static_cast<double>(m)));
    }
  }
  try {
    (void)make_window(g, shaping_config());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("shaping: ") + e.what());
  }
  if (channel != "pedestrian-a" && channel != "flat") {
    throw ConfigError("channel: expected pedestrian-a or flat, got '" + channel + "'");
  }
  if (equalizer != "zf" && equalizer != "mmse" && equalizer != "both") {
    throw ConfigError("equalizer: expected zf, mmse or both, got '" + equalizer + "'");
  }
  if (!(es_n0.step > 0.0) && es_n0.start != es_n0.stop) {
    throw ConfigError("esn0: step must be positive");
  }
  if (es_n0.stop < es_n0.start) throw ConfigError("esn0: stop is below start");
  if (realizations == 0) throw ConfigError("realizations: must be at least 1");
  if (frames == 0) throw ConfigError("frames: must be at least 1");
  if (!(sigma_x2 > 0.0)) throw ConfigError("sigma_x2: must be positive");
  if (!(overlap >= 0.0 && overlap < 1.0)) throw ConfigError("overlap: must lie in [0, 1)");
  if (threads == 0) throw ConfigError("threads: must be at least 1");
}

SystemGeometry ExperimentConfig::geometry() const {
  try {
    return derive_geometry(m, n, cp);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
}

ShapingConfig ExperimentConfig::shaping_config() const {
  return {shaping, shaping == WindowKind::Rectangular ? 0.0 : rolloff, block};
}

WelchParams ExperimentConfig::welch_params() const {
  return {segment == 0 ? 4 * (n + cp) : segment, overlap, welch_window};
}

std::string ExperimentConfig::echo(const std::string& command) const {
  std::string s;
  s += fmt::format("# scfdma {}\n", command);
  s += fmt::format("# preset={} m={} n={} cp={}\n", preset, m, n, cp);
  s += fmt::format("# shaping={} rolloff={} block={}\n", shaping_name(shaping),
                   shaping == WindowKind::Rectangular ? 0.0 : rolloff,
                   block ? std::to_string(*block) : "default");
  if (command == "sinr") {
    s += fmt::format("# channel={} profile={} normalize={}\n", channel,
                     profile_path.value_or("builtin"), normalize ? "yes" : "no");
    s += fmt::format("# equalizer={} esn0_db={}:{}:{} realizations={} frames_per_realization={}\n",
                     equalizer, es_n0.start, es_n0.step, es_n0.stop, realizations, frames);
  }
  if (command == "psd") {
    const WelchParams w = welch_params();
    s += fmt::format("# frames={} segment={} overlap={} welch_window={}\n", frames, w.segment_len,
                     w.overlap, welch_window_name(w.window));
  }
  s += fmt::format("# seed={} sigma_x2={}\n", seed, sigma_x2);
  return s;
}

void run_psd(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  PsdSimulation sim{config.geometry(), config.shaping_config(), config.frames,
                    config.welch_params(), config.seed, config.sigma_x2, config.threads};
  const PsdResult result = simulate_psd(sim);
  out << config.echo("psd");
  out << "# freq in cycles per sample; psd in dB per unit normalized frequency\n";
  out << fmt::format("# measured_mean_power={}\n", num(result.mean_power));
  out << "freq_normalized,psd_db_analytical,psd_db_estimated\n";
  for (std::size_t i = 0; i < result.estimated.freqs.size(); ++i) {
    out << fmt::format("{:.8f},{},{}\n", result.estimated.freqs[i],
                       db(result.analytical.values[i]), db(result.estimated.values[i]));
  }
}

void run_sinr(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  SinrCampaign c{config.geometry(),
                 config.shaping_config(),
                 {},
                 equalizer_list(config.equalizer),
                 config.es_n0.values(),
                 config.realizations,
                 config.frames,
                 config.seed,
                 config.sigma_x2,
                 config.threads};
  if (config.channel == "flat") {
    c.channel.kind = ChannelSource::Kind::Flat;
  } else {
    c.channel.kind = ChannelSource::Kind::Profile;
    c.channel.profile = config.profile_path
                            ? TapProfile::load(*config.profile_path, kLteSampleDurationNs)
                            : pedestrian_a_profile();
    if (c.channel.profile->max_delay() > config.cp) {
      throw ConfigError(fmt::format("channel: profile spans {} samples, beyond N_g = {}",
                                    c.channel.profile->max_delay(), config.cp));
    }
  }
  c.channel.normalize = config.normalize;
  const SinrReport report = run_sinr_campaign(c);

  out << config.echo("sinr");
  out << "# sinr and ci in dB; useful/interference/noise are linear realization means\n";
  out << "esn0_db,sinr_analytical_db,sinr_empirical_db,ci_halfwidth_db,useful,interference,noise,"
         "dropped_realizations,equalizer,sinr_analytical_dbmean,sinr_empirical_dbmean\n";
  for (const SinrPoint& p : report.points) {
    out << fmt::format("{},{:.6f},{:.6f},{},{},{},{},{},{},{:.6f},{:.6f}\n", num(p.es_n0_db),
                       p.analytical_db, p.empirical_db, num(p.ci_halfwidth_db), num(p.useful),
                       num(p.interference), num(p.noise), report.dropped_realizations,
                       p.equalizer == EqualizerKind::ZF ? "zf" : "mmse", p.analytical_db_mean,
                       p.empirical_db_mean);
  }
}

void run_window(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  const SystemGeometry g = config.geometry();
  const SpectralWindow H = make_window(g, config.shaping_config());
  out << config.echo("window");
  out << "bin,magnitude,filter_re,filter_im\n";
  for (std::size_t k = 0; k < g.l(); ++k) {
    out << fmt::format("{},{},{},{}\n", k, num(std::abs(H.response()[k])),
                       num(H.filter()[k].real()), num(H.filter()[k].imag()));
  }
}

int run_validate(const ExperimentConfig& config, bool explicit_geometry, bool inject_fault,
                 std::ostream& out) {
  ValidationOptions options;
  options.seed = config.seed;
  options.geometries =
      explicit_geometry ? std::vector<SystemGeometry>{config.geometry()}
                        : default_validation_geometries();
  testing::set_normalization_fault(inject_fault);
  std::vector<CheckResult> results;
  try {
    results = run_validation(options);
  } catch (...) {
    testing::set_normalization_fault(false);
    throw;
  }
  testing::set_normalization_fault(false);
  int failures = 0;
  for (const CheckResult& r : results) {
    if (!r.passed) ++failures;
    out << fmt::format("{} {}: worst={:.3e} tol={:.0e}{}\n", r.passed ? "PASS" : "FAIL", r.name,
                       r.worst, r.tolerance, r.passed || r.detail.empty() ? "" : " at " + r.detail);
  }
  return failures;
}

}  // namespace scfdma
