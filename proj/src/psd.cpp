#include "scfdma/psd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scfdma/fft.hpp"
#include "scfdma/kernels.hpp"

namespace scfdma {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double psd_scale(const SystemGeometry& g, double sigma_x2) {
  const double n = static_cast<double>(g.n());
  return static_cast<double>(g.m()) * sigma_x2 / (static_cast<double>(g.nt()) * n * n);
}

void check_window(const SpectralWindow& H, const SystemGeometry& g) {
  if (H.response().size() != g.l()) throw std::invalid_argument("psd: window length != L");
}

double shift(std::size_t bin, const SystemGeometry& g) {
  return static_cast<double>(bin) / static_cast<double>(g.n());
}

}  // namespace

double dirichlet(double w, std::size_t nt) {
  if (nt == 0) throw std::invalid_argument("dirichlet: N_t must be positive");
  const double k = std::round(w / kTwoPi);
  if (std::abs(w - k * kTwoPi) <= 1e-12 * std::max(1.0, std::abs(w))) {
    const auto parity = static_cast<long long>(k) * static_cast<long long>(nt - 1);
    return (parity % 2 == 0) ? 1.0 : -1.0;
  }
  const double ntd = static_cast<double>(nt);
  return std::sin(ntd * w / 2.0) / (ntd * std::sin(w / 2.0));
}

PulseShape PulseShape::rectangular(std::size_t nt) {
  if (nt == 0) throw std::invalid_argument("pulse: N_t must be positive");
  PulseShape p;
  p.kind = Kind::RectangularNt;
  p.transfer = [nt](double f) {
    const double reduced = f - std::floor(f);
    const double ntd = static_cast<double>(nt);
    return std::polar(ntd * dirichlet(kTwoPi * reduced, nt),
                      -std::numbers::pi * reduced * (ntd - 1.0));
  };
  return p;
}

PulseShape PulseShape::custom(std::function<cplx(double)> transfer) {
  if (!transfer) throw std::invalid_argument("pulse: empty transfer function");
  PulseShape p;
  p.kind = Kind::Custom;
  p.transfer = std::move(transfer);
  return p;
}

std::vector<double> uniform_grid(std::size_t count) {
  if (count == 0) throw std::invalid_argument("grid: count must be positive");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(count);
  }
  return grid;
}

PsdCurve analytical_psd(const SpectralWindow& H, const SystemGeometry& g, const PulseShape& pulse,
                        std::span<const double> grid, double sigma_x2) {
  check_window(H, g);
  const auto& h = H.response();
  const double c = psd_scale(g, sigma_x2);
  PsdCurve out{{grid.begin(), grid.end()}, std::vector<double>(grid.size()), "analytical"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = grid[i];
    double total = 0.0;
    for (std::size_t r = 0; r < g.m(); ++r) {
      cplx inner{};
      for (std::size_t s = 0; s < g.lm(); ++s) {
        const std::size_t k = s * g.m() + r;
        if (h[k] != cplx{}) inner += h[k] * pulse(f - shift(k, g));
      }
      total += std::norm(inner);
    }
    out.values[i] = c * total;
  }
  return out;
}

PsdCurve rectangular_psd(const SpectralWindow& H, const SystemGeometry& g,
                         const PulseShape& pulse, std::span<const double> grid, double sigma_x2) {
  check_window(H, g);
  if (H.kind() != WindowKind::Rectangular) {
    throw std::invalid_argument("rectangular_psd: window is not rectangular");
  }
  const double c = psd_scale(g, sigma_x2);
  const std::size_t first = H.block() * g.m();
  PsdCurve out{{grid.begin(), grid.end()}, std::vector<double>(grid.size()), "analytical"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double total = 0.0;
    for (std::size_t r = 0; r < g.m(); ++r) total += std::norm(pulse(grid[i] - shift(first + r, g)));
    out.values[i] = c * total;
  }
  return out;
}

PsdCurve rrc_regime_psd(const SpectralWindow& H, const SystemGeometry& g,
                        const PulseShape& pulse, std::span<const double> grid, double sigma_x2) {
  check_window(H, g);
  if (H.kind() != WindowKind::RootRaisedCosine || H.block() != 1) {
    throw std::invalid_argument("rrc_regime_psd: needs a root-raised-cosine window on block 1");
  }
  const std::size_t m = g.m();
  const std::size_t ma = rrc_excess_bins(m, H.rolloff());
  const auto& h = H.response();
  const double c = psd_scale(g, sigma_x2);
  PsdCurve out{{grid.begin(), grid.end()}, std::vector<double>(grid.size()), "analytical"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = grid[i];
    double total = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      cplx gamma = h[m + r] * pulse(f - shift(m + r, g));
      if (r < ma) {
        gamma += h[2 * m + r] * pulse(f - shift(2 * m + r, g));
      } else if (r >= m - ma) {
        gamma += h[r] * pulse(f - shift(r, g));
      }
      total += std::norm(gamma);
    }
    out.values[i] = c * total;
  }
  return out;
}

WelchAccumulator::WelchAccumulator(const WelchParams& params) : params_(params) {
  const std::size_t len = params.segment_len;
  if (len < 2) throw std::invalid_argument("welch: segment length must be at least 2");
  if (!(params.overlap >= 0.0 && params.overlap < 1.0)) {
    throw std::invalid_argument("welch: overlap must lie in [0, 1)");
  }
  step_ = static_cast<std::size_t>(
      std::llround(static_cast<double>(len) * (1.0 - params.overlap)));
  if (step_ == 0) step_ = 1;
  taper_.assign(len, 1.0);
  if (params.window == SegmentWindow::Hann) {
    for (std::size_t i = 0; i < len; ++i) {
      taper_[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(len));
    }
  }
  for (double w : taper_) taper_energy_ += w * w;
  sum_.assign(len, 0.0);
}

void WelchAccumulator::process(std::span<const cplx> segment) {
  const std::size_t len = params_.segment_len;
  ComplexBlock buf(len);
  for (std::size_t i = 0; i < len; ++i) buf[i] = segment[i] * taper_[i];
  ComplexBlock spectrum(len);
  fft_plan(len).forward(buf, spectrum);
  kernels::accumulate_power(spectrum, sum_);
  ++segments_;
}

void WelchAccumulator::push(std::span<const cplx> samples) {
  total_samples_ += samples.size();
  pending_.insert(pending_.end(), samples.begin(), samples.end());
  const std::size_t len = params_.segment_len;
  std::size_t start = 0;
  while (start + len <= pending_.size()) {
    process(std::span<const cplx>(pending_).subspan(start, len));
    start += step_;
  }
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<long>(start));
}

PsdCurve WelchAccumulator::result() const {
  if (total_samples_ < 2 * params_.segment_len || segments_ == 0) {
    throw std::invalid_argument("welch: input shorter than two segments");
  }
  PsdCurve out{uniform_grid(params_.segment_len), std::vector<double>(params_.segment_len),
               "estimated"};
  const double norm = 1.0 / (static_cast<double>(segments_) * taper_energy_);
  for (std::size_t k = 0; k < sum_.size(); ++k) out.values[k] = sum_[k] * norm;
  return out;
}

PsdCurve welch_estimate(std::span<const cplx> samples, const WelchParams& params) {
  if (samples.size() < 2 * params.segment_len) {
    throw std::invalid_argument("welch: input shorter than two segments");
  }
  WelchAccumulator acc(params);
  acc.push(samples);
  return acc.result();
}

}  // namespace scfdma
