#pragma once

#include <cstddef>

namespace scfdma {

/// Integer rate structure of one localized SC-FDMA link.
///
/// M is the precoding DFT size, N the IDFT size and L = lcm(M, N) the
/// common rate on which both transmitter and receiver are modelled.
/// L = M * L_M = N * L_N with gcd(L_M, L_N) = 1, L_M | N and L_N | M.
/// Instances are immutable and only obtainable through derive_geometry().
class SystemGeometry {
 public:
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t l() const { return l_; }
  std::size_t lm() const { return lm_; }
  std::size_t ln() const { return ln_; }
  /// Cyclic-prefix length in samples.
  std::size_t cp() const { return cp_; }
  /// Block length including the cyclic prefix.
  std::size_t nt() const { return n_ + cp_; }

  friend bool operator==(const SystemGeometry&, const SystemGeometry&) = default;

 private:
  friend SystemGeometry derive_geometry(std::size_t, std::size_t, std::size_t);
  SystemGeometry() = default;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t l_ = 0;
  std::size_t lm_ = 0;
  std::size_t ln_ = 0;
  std::size_t cp_ = 0;
};

/// Throws std::invalid_argument for zero sizes or M > N.
SystemGeometry derive_geometry(std::size_t m, std::size_t n, std::size_t cp);

/// True iff N >= 2 (1 + alpha) M, the sampling condition at the receiver
/// input for a shaping window with roll-off alpha.
bool nyquist_check(const SystemGeometry& g, double alpha);

}  // namespace scfdma
