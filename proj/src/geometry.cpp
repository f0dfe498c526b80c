#include "scfdma/geometry.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace scfdma {

SystemGeometry derive_geometry(std::size_t m, std::size_t n, std::size_t cp) {
  if (m == 0 || n == 0) {
    throw std::invalid_argument("geometry: M and N must be positive");
  }
  if (m > n) {
    throw std::invalid_argument("geometry: M = " + std::to_string(m) +
                                " exceeds N = " + std::to_string(n));
  }
  SystemGeometry g;
  g.m_ = m;
  g.n_ = n;
  g.l_ = std::lcm(m, n);
  g.lm_ = g.l_ / m;
  g.ln_ = g.l_ / n;
  g.cp_ = cp;
  return g;
}

bool nyquist_check(const SystemGeometry& g, double alpha) {
  return static_cast<double>(g.n()) >= 2.0 * (1.0 + alpha) * static_cast<double>(g.m());
}

}  // namespace scfdma
