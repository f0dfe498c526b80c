// Command-line driver: psd, sinr, window and validate subcommands writing CSV.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "scfdma/experiment.hpp"
#include "scfdma/kernels.hpp"

namespace {

struct Flags {
  std::string preset = "lte5";
  std::optional<std::size_t> m, n, cp, block;
  std::string shaping = "rect";
  double rolloff = 0.35;
  std::uint64_t seed = 1;
  std::optional<std::size_t> threads;
  std::string output;

  std::optional<std::size_t> frames;
  std::size_t segment = 0;
  double overlap = 0.5;
  std::string welch_window = "rect";

  std::string channel = "pedestrian-a";
  std::optional<std::string> profile;
  bool no_normalize = false;
  std::string equalizer = "both";
  std::string esn0 = "0:5:30";
  std::size_t realizations = 2000;

  bool inject_fault = false;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("SCFDMA_THREADS")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw scfdma::ConfigError(std::string("SCFDMA_THREADS: not a number: ") + env);
    }
  }
  return 1;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--preset", f.preset, "Parameter preset: lte5 (N=512, N_g=31) or toy (4, 8, 2)")
      ->check(CLI::IsMember({"lte5", "toy"}));
  cmd->add_option("--m", f.m, "Symbols per block M");
  cmd->add_option("--n", f.n, "IDFT size N");
  cmd->add_option("--cp", f.cp, "Cyclic prefix length N_g");
  cmd->add_option("--shaping", f.shaping, "Spectral window")->check(CLI::IsMember({"rect", "rrc"}));
  cmd->add_option("--rolloff", f.rolloff, "Root-raised-cosine roll-off");
  cmd->add_option("--block", f.block, "Index of the user's M-bin block");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--threads", f.threads, "Worker threads (default: $SCFDMA_THREADS or 1)");
  cmd->add_option("-o,--output", f.output, "Output file (default: stdout)");
}

scfdma::ExperimentConfig to_config(const Flags& f) {
  scfdma::ExperimentConfig c;
  c.apply_preset(f.preset);
  if (f.m) c.m = *f.m;
  if (f.n) c.n = *f.n;
  if (f.cp) c.cp = *f.cp;
  c.shaping = f.shaping == "rrc" ? scfdma::WindowKind::RootRaisedCosine
                                 : scfdma::WindowKind::Rectangular;
  c.rolloff = f.rolloff;
  c.block = f.block;
  c.seed = f.seed;
  c.threads = f.threads ? *f.threads : default_threads();
  c.output = f.output;
  c.segment = f.segment;
  c.overlap = f.overlap;
  c.welch_window = f.welch_window == "hann" ? scfdma::SegmentWindow::Hann
                                            : scfdma::SegmentWindow::Rectangular;
  c.channel = f.channel;
  c.profile_path = f.profile;
  c.normalize = !f.no_normalize;
  c.equalizer = f.equalizer;
  c.es_n0 = scfdma::EsN0Grid::parse(f.esn0);
  c.realizations = f.realizations;
  return c;
}

template <typename Run>
int with_output(const scfdma::ExperimentConfig& c, Run run) {
  if (c.output.empty()) {
    run(c, std::cout);
    return 0;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << c.output << " for writing\n";
    return 2;
  }
  run(c, file);
  file.close();
  if (!file) {
    std::cerr << "error: failed writing " << c.output << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized SC-FDMA link model: PSD, SINR and window tables"};
  app.require_subcommand(1);
  Flags f;

  auto* psd = app.add_subcommand("psd", "Analytical and Welch-estimated PSD");
  add_common(psd, f);
  psd->add_option("--frames", f.frames, "Simulated frames (default 4000)");
  psd->add_option("--segment", f.segment, "Welch segment length (default 4 N_t)");
  psd->add_option("--overlap", f.overlap, "Welch segment overlap fraction");
  psd->add_option("--welch-window", f.welch_window, "Segment taper")
      ->check(CLI::IsMember({"rect", "hann"}));

  auto* sinr = app.add_subcommand("sinr", "Analytical and Monte Carlo SINR over an Es/N0 grid");
  add_common(sinr, f);
  sinr->add_option("--channel", f.channel, "Channel model")
      ->check(CLI::IsMember({"pedestrian-a", "flat"}));
  sinr->add_option("--profile", f.profile, "Tap profile file with delay_ns,power_db rows");
  sinr->add_flag("--no-normalize", f.no_normalize, "Keep profile powers as given");
  sinr->add_option("--equalizer", f.equalizer, "Equalizer")
      ->check(CLI::IsMember({"zf", "mmse", "both"}));
  sinr->add_option("--esn0", f.esn0, "Es/N0 grid in dB, start:step:stop");
  sinr->add_option("--realizations", f.realizations, "Block-fading channel realizations");
  sinr->add_option("--frames", f.frames, "Frames per realization (default 10)");

  auto* window = app.add_subcommand("window", "Spectral window magnitude and time filter");
  add_common(window, f);

  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  add_common(validate, f);
  validate->add_flag("--inject-fault", f.inject_fault,
                     "Drop the inverse DFT scaling to exercise the checks");

  CLI11_PARSE(app, argc, argv);

  try {
    scfdma::ExperimentConfig c = to_config(f);
    if (psd->parsed()) {
      c.frames = f.frames.value_or(4000);
      return with_output(c, scfdma::run_psd);
    }
    if (sinr->parsed()) {
      c.frames = f.frames.value_or(10);
      return with_output(c, scfdma::run_sinr);
    }
    if (window->parsed()) return with_output(c, scfdma::run_window);

    const bool explicit_geometry = f.m || f.n || f.cp || validate->count("--preset") > 0;
    std::cout << "kernels: " << scfdma::kernels::isa_name(scfdma::kernels::active_isa()) << "\n";
    const int failures = scfdma::run_validate(c, explicit_geometry, f.inject_fault, std::cout);
    std::cout << (failures == 0 ? "all checks passed\n" : "some checks failed\n");
    return failures == 0 ? 0 : 1;
  } catch (const scfdma::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
