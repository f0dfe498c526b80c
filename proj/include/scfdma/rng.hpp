#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace scfdma {

/// Counter-addressed random stream.
///
/// A stream is identified by a master seed and a short path of indices
/// (domain, frame, realization, attempt...). Streams with different paths are
/// statistically independent, so Monte Carlo work can be split across workers
/// in any order and still reproduce the same numbers.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

  std::uint64_t bits() { return engine_(); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double gaussian() { return normal_(engine_); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> circular_gaussian(double variance);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stream domains; keep values stable, they are part of the reproducibility contract.
namespace stream {
inline constexpr std::uint64_t kPsdFrames = 1;
inline constexpr std::uint64_t kSinrRealization = 2;
inline constexpr std::uint64_t kValidation = 3;
}  // namespace stream

}  // namespace scfdma
