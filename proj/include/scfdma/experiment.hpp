#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scfdma/geometry.hpp"
#include "scfdma/psd.hpp"
#include "scfdma/shaping.hpp"

namespace scfdma {

/// Invalid experiment settings; the message names the violated constraint.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EsN0Grid {
  double start = 0.0;
  double step = 5.0;
  double stop = 30.0;

  /// Parses "start:step:stop" or a single value.
  static EsN0Grid parse(const std::string& text);
  std::vector<double> values() const;
};

struct ExperimentConfig {
  std::string preset = "lte5";
  std::size_t m = 10;
  std::size_t n = 512;
  std::size_t cp = 31;

  WindowKind shaping = WindowKind::Rectangular;
  double rolloff = 0.35;
  std::optional<std::size_t> block;

  std::string channel = "pedestrian-a";  // pedestrian-a | flat
  std::optional<std::string> profile_path;
  bool normalize = true;

  std::string equalizer = "both";  // zf | mmse | both
  EsN0Grid es_n0;
  std::size_t realizations = 2000;
  std::size_t frames = 10;  // per realization for sinr, total for psd
  std::uint64_t seed = 1;
  double sigma_x2 = 1.0;

  std::size_t segment = 0;  // 0 selects 4 N_t
  double overlap = 0.5;
  SegmentWindow welch_window = SegmentWindow::Rectangular;

  std::size_t threads = 1;
  std::string output;  // empty writes to stdout

  /// Applies `lte5` (N=512, N_g=31) or `toy` (M=4, N=8, N_g=2).
  void apply_preset(const std::string& name);

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
  SystemGeometry geometry() const;
  ShapingConfig shaping_config() const;
  WelchParams welch_params() const;

  /// `# key=value` header lines. The thread count is left out so outputs do
  /// not depend on it.
  std::string echo(const std::string& command) const;
};

void run_psd(const ExperimentConfig& config, std::ostream& out);
void run_sinr(const ExperimentConfig& config, std::ostream& out);
void run_window(const ExperimentConfig& config, std::ostream& out);

/// Prints one PASS/FAIL line per check and returns the number of failures.
/// With no explicit geometry the default set is used.
int run_validate(const ExperimentConfig& config, bool explicit_geometry, bool inject_fault,
                 std::ostream& out);

}  // namespace scfdma
