#include "scfdma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace scfdma {

TapProfile::TapProfile(std::vector<ProfileEntry> entries, double sample_duration_ns)
    : entries_(std::move(entries)), sample_duration_ns_(sample_duration_ns) {
  if (entries_.empty()) throw std::invalid_argument("tap profile: no taps");
  if (!(sample_duration_ns_ > 0.0)) {
    throw std::invalid_argument("tap profile: sample duration must be positive");
  }
  for (const ProfileEntry& e : entries_) {
    if (!(e.delay_ns >= 0.0) || !std::isfinite(e.power_db)) {
      throw std::invalid_argument("tap profile: invalid entry");
    }
  }
}

std::vector<std::size_t> TapProfile::sample_delays() const {
  std::vector<std::size_t> delays;
  delays.reserve(entries_.size());
  for (const ProfileEntry& e : entries_) {
    delays.push_back(static_cast<std::size_t>(std::llround(e.delay_ns / sample_duration_ns_)));
  }
  return delays;
}

std::vector<double> TapProfile::linear_powers() const {
  std::vector<double> powers;
  powers.reserve(entries_.size());
  for (const ProfileEntry& e : entries_) powers.push_back(std::pow(10.0, e.power_db / 10.0));
  return powers;
}

std::size_t TapProfile::max_delay() const {
  const auto delays = sample_delays();
  return *std::max_element(delays.begin(), delays.end());
}

TapProfile TapProfile::parse(std::istream& in, double sample_duration_ns) {
  std::vector<ProfileEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    ProfileEntry e;
    if (!(fields >> e.delay_ns >> e.power_db)) {
      if (entries.empty() && line_no == 1) continue;  // header row
      throw std::invalid_argument("tap profile: malformed row " + std::to_string(line_no));
    }
    entries.push_back(e);
  }
  return TapProfile(std::move(entries), sample_duration_ns);
}

TapProfile TapProfile::load(const std::string& path, double sample_duration_ns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tap profile: cannot open " + path);
  return parse(in, sample_duration_ns);
}

TapProfile pedestrian_a_profile() {
  return TapProfile({{0.0, 0.0}, {130.2, -9.24}, {390.6, -22.8}}, kLteSampleDurationNs);
}

ChannelRealization ChannelRealization::from_taps(std::vector<Tap> taps,
                                                 const SystemGeometry& g) {
  for (const Tap& t : taps) {
    if (t.delay > g.cp()) {
      throw std::invalid_argument("channel: tap delay " + std::to_string(t.delay) +
                                  " exceeds CP length " + std::to_string(g.cp()));
    }
  }
  ChannelRealization ch;
  ch.taps_ = std::move(taps);
  const std::size_t n = g.n();
  ch.response_.assign(n, cplx{});
  for (const Tap& t : ch.taps_) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t phase_index = (k * t.delay) % n;
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(phase_index) /
                           static_cast<double>(n);
      ch.response_[k] += t.gain * std::polar(1.0, phase);
    }
  }
  ch.extended_.assign(g.l(), cplx{});
  std::copy(ch.response_.begin(), ch.response_.end(), ch.extended_.begin());
  ch.impulse_ = inverse_dft(ch.extended_);
  return ch;
}

ChannelRealization realize(const TapProfile& profile, RngStream& rng, const SystemGeometry& g,
                           bool normalize) {
  const auto delays = profile.sample_delays();
  auto powers = profile.linear_powers();
  if (normalize) {
    double total = 0.0;
    for (double p : powers) total += p;
    for (double& p : powers) p /= total;
  }
  std::vector<Tap> taps;
  taps.reserve(delays.size());
  for (std::size_t i = 0; i < delays.size(); ++i) {
    taps.push_back({delays[i], rng.circular_gaussian(powers[i])});
  }
  return ChannelRealization::from_taps(std::move(taps), g);
}

ChannelRealization flat_channel(const SystemGeometry& g) {
  return ChannelRealization::from_taps({{0, cplx(1.0, 0.0)}}, g);
}

ComplexBlock awgn(RngStream& rng, std::size_t count, NoiseModel noise) {
  if (count == 0) throw std::invalid_argument("awgn: count must be positive");
  ComplexBlock w(count);
  if (noise.sigma_w2 == 0.0) return w;
  for (cplx& v : w) v = rng.circular_gaussian(noise.sigma_w2);
  return w;
}

ComplexBlock apply_block_fading(std::span<const cplx> stream,
                                std::span<const ChannelRealization> per_frame,
                                const SystemGeometry& g) {
  const std::size_t nt = g.nt();
  if (stream.size() != per_frame.size() * nt) {
    throw std::invalid_argument("apply_block_fading: stream is not a whole number of frames");
  }
  ComplexBlock out(stream.size());
  for (std::size_t n = 0; n < stream.size(); ++n) {
    const ChannelRealization& ch = per_frame[n / nt];
    cplx acc{};
    for (const Tap& t : ch.taps()) {
      if (t.delay <= n) acc += t.gain * stream[n - t.delay];
    }
    out[n] = acc;
  }
  return out;
}

ComplexBlock circular_channel(std::span<const cplx> body, const ChannelRealization& channel) {
  const std::size_t n = body.size();
  ComplexBlock out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc{};
    for (const Tap& t : channel.taps()) acc += t.gain * body[(i + n - t.delay % n) % n];
    out[i] = acc;
  }
  return out;
}

}  // namespace scfdma
