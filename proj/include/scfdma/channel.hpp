#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scfdma/dft.hpp"
#include "scfdma/geometry.hpp"
#include "scfdma/rng.hpp"

namespace scfdma {

struct Tap {
  std::size_t delay = 0;  // samples
  cplx gain;
};

struct ProfileEntry {
  double delay_ns = 0.0;
  double power_db = 0.0;
};

/// Power-delay profile of a tapped-delay-line channel.
class TapProfile {
 public:
  TapProfile(std::vector<ProfileEntry> entries, double sample_duration_ns);

  const std::vector<ProfileEntry>& entries() const { return entries_; }
  double sample_duration_ns() const { return sample_duration_ns_; }

  /// Delays rounded to the nearest sample.
  std::vector<std::size_t> sample_delays() const;
  /// Average tap powers, linear.
  std::vector<double> linear_powers() const;
  std::size_t max_delay() const;

  /// Parses `delay_ns,power_db` rows. Blank lines and `#` comments are
  /// skipped, as is a non-numeric header row.
  static TapProfile parse(std::istream& in, double sample_duration_ns);
  static TapProfile load(const std::string& path, double sample_duration_ns);

 private:
  std::vector<ProfileEntry> entries_;
  double sample_duration_ns_;
};

/// LTE long-block sample duration, 66.67 us / 512.
inline constexpr double kLteSampleDurationNs = 66670.0 / 512.0;

/// Simplified Pedestrian-A: (0 ns, 0 dB), (130.2 ns, -9.24 dB), (390.6 ns, -22.8 dB).
TapProfile pedestrian_a_profile();

/// One block-fading channel draw with its derived responses.
class ChannelRealization {
 public:
  /// Throws std::invalid_argument when a tap delay exceeds the CP length.
  static ChannelRealization from_taps(std::vector<Tap> taps, const SystemGeometry& g);

  const std::vector<Tap>& taps() const { return taps_; }
  /// C_k = sum_taps gain e^{-j2pi k delay / N}, length N.
  const ComplexBlock& response() const { return response_; }
  /// C~: C on [0, N), zero on [N, L).
  const ComplexBlock& extended_response() const { return extended_; }
  /// c~ = IDFT_L(C~).
  const ComplexBlock& impulse_response() const { return impulse_; }

 private:
  ChannelRealization() = default;

  std::vector<Tap> taps_;
  ComplexBlock response_;
  ComplexBlock extended_;
  ComplexBlock impulse_;
};

/// Rayleigh draw of every tap with its (optionally normalized) average power.
ChannelRealization realize(const TapProfile& profile, RngStream& rng, const SystemGeometry& g,
                           bool normalize = true);

/// Deterministic single unit tap.
ChannelRealization flat_channel(const SystemGeometry& g);

struct NoiseModel {
  double sigma_w2 = 0.0;
};

/// i.i.d. circular complex Gaussian samples with E|w|^2 = sigma_w2.
ComplexBlock awgn(RngStream& rng, std::size_t count, NoiseModel noise);

/// Linear convolution of a CP-framed stream with a block-fading channel:
/// samples of frame l see realization l, with memory reaching into frame l-1.
ComplexBlock apply_block_fading(std::span<const cplx> stream,
                                std::span<const ChannelRealization> per_frame,
                                const SystemGeometry& g);

/// Circular convolution of one N-sample body with the channel taps.
ComplexBlock circular_channel(std::span<const cplx> body, const ChannelRealization& channel);

}  // namespace scfdma
