#include "scfdma/rng.hpp"

#include <cmath>

namespace scfdma {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t index : path) h = splitmix64(h ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path)
    : engine_(derive_seed(master_seed, path)) {}

std::complex<double> RngStream::circular_gaussian(double variance) {
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {scale * re, scale * im};
}

}  // namespace scfdma
