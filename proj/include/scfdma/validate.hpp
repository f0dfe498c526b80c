#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scfdma/geometry.hpp"

namespace scfdma {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::vector<SystemGeometry> geometries;
  std::size_t frames = 50;          // random blocks per geometry and window
  std::size_t realizations = 50;    // channel draws for the equalizer checks
  std::size_t noise_draws = 20000;  // draws for the equivalent-noise variance
  std::uint64_t seed = 1;
};

/// (4,8,2), (6,8,2), (10,512,31), (12,512,31).
std::vector<SystemGeometry> default_validation_geometries();

/// Cross-module invariant suite. Each check reports its worst deviation.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

}  // namespace scfdma
