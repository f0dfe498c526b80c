#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "scfdma/txchain.hpp"

using namespace scfdma;

namespace {

ComplexBlock gaussian(RngStream& rng, std::size_t n) { return awgn(rng, n, {1.0}); }

}  // namespace

TEST_CASE("identity chain when M equals N", "[txchain]") {
  const auto g = derive_geometry(8, 8, 0);
  RngStream rng(40, {0});
  const auto xb = qpsk_block(rng, 8);
  const auto H = rectangular_window(g);
  CHECK(oracle::max_abs_diff(tx_reference(xb, H, g).samples, xb.x) < 1e-14);
  const auto G = EqualizerResponse::custom(ComplexBlock(8, 1.0));
  const TimeFrame r{gaussian(rng, 8), false};
  CHECK(oracle::max_abs_diff(rx_reference(r, G, g), r.samples) < 1e-14);
}

TEST_CASE("reference transmitter matches the classical construction", "[txchain]") {
  RngStream rng(41, {0});
  for (auto [m, n, tol] : {std::tuple{4, 8, 1e-12}, std::tuple{10, 512, 1e-10}}) {
    const auto g = derive_geometry(m, n, 0);
    const auto H = rectangular_window(g);
    for (int i = 0; i < 5; ++i) {
      const auto xb = qpsk_block(rng, g.m());
      CHECK(oracle::max_abs_diff(tx_reference(xb, H, g).samples,
                                 oracle::classic_transmitter(xb.x, g.n())) < tol);
    }
  }
}

TEST_CASE("time-domain transmitter equals the reference", "[txchain]") {
  RngStream rng(42, {0});
  for (auto [m, n] : {std::pair{4, 8}, std::pair{6, 8}, std::pair{10, 512}}) {
    const auto g = derive_geometry(m, n, 2);
    for (const auto& H : {rectangular_window(g), rrc_window(g, 0.35, 1, NyquistPolicy::Waive)}) {
      for (int i = 0; i < 20; ++i) {
        const auto xb = qpsk_block(rng, g.m());
        REQUIRE(oracle::max_abs_diff(tx_reference(xb, H, g).samples,
                                     tx_time_equivalent(xb, H, g).samples) < 1e-10);
      }
    }
  }
}

TEST_CASE("impulse through the time-domain transmitter", "[txchain]") {
  const auto g = derive_geometry(10, 512, 0);
  const auto H = rectangular_window(g);
  SymbolBlock xb{ComplexBlock(10), 1.0};
  xb.x[0] = 1.0;
  const auto y = tx_time_equivalent(xb, H, g).samples;
  for (std::size_t n = 0; n < g.n(); ++n) {
    REQUIRE(std::abs(y[n] - static_cast<double>(g.ln()) * H.filter()[n * g.ln()]) < 1e-15);
  }
  // Closed form: (1/N) sum_{k<M} e^{j2pi kn/N}.
  CHECK(std::abs(y[0] - 10.0 / 512.0) < 1e-15);
  SymbolBlock zero{ComplexBlock(10), 1.0};
  CHECK(oracle::max_abs(tx_time_equivalent(zero, H, g).samples) == 0.0);
}

TEST_CASE("cyclic prefix", "[txchain]") {
  const auto g = derive_geometry(2, 4, 2);
  const TimeFrame body{{1, 2, 3, 4}, false};
  const auto framed = add_cp(body, g);
  CHECK(framed.samples == ComplexBlock{3, 4, 1, 2, 3, 4});
  CHECK(framed.has_cp);
  CHECK(remove_cp(framed, g).samples == body.samples);
  CHECK_THROWS_AS(add_cp(framed, g), std::invalid_argument);
  CHECK_THROWS_AS(remove_cp(body, g), std::invalid_argument);

  const auto g0 = derive_geometry(2, 4, 0);
  CHECK(add_cp(body, g0).samples == body.samples);
  CHECK(remove_cp(add_cp(body, g0), g0).samples == body.samples);
}

TEST_CASE("receiver paths agree", "[txchain]") {
  RngStream rng(43, {0});
  for (auto [m, n] : {std::pair{4, 8}, std::pair{6, 8}, std::pair{10, 512}}) {
    const auto g = derive_geometry(m, n, 2);
    for (int i = 0; i < 10; ++i) {
      const auto G = EqualizerResponse::custom(gaussian(rng, g.l()));
      const TimeFrame r{gaussian(rng, g.n()), false};
      REQUIRE(oracle::max_abs_diff(rx_reference(r, G, g), rx_time_equivalent(r, G, g)) < 1e-10);
    }
  }
  const auto g = derive_geometry(4, 8, 2);
  ComplexBlock ones(g.l(), 1.0);
  const auto G = EqualizerResponse::custom(ones);
  TimeFrame impulse{ComplexBlock(8), false};
  impulse.samples[0] = 1.0;
  const auto out = rx_time_equivalent(impulse, G, g);
  CHECK(std::abs(out[0] - static_cast<double>(g.lm())) < 1e-15);
  for (std::size_t k = 1; k < out.size(); ++k) CHECK(std::abs(out[k]) < 1e-15);
  CHECK(oracle::max_abs(rx_time_equivalent({ComplexBlock(8), false}, G, g)) == 0.0);
}

TEST_CASE("zero-forcing loopback recovers the symbols", "[txchain]") {
  const auto g = derive_geometry(10, 512, 31);
  RngStream rng(44, {0});
  for (const auto& H : {rectangular_window(g), rrc_window(g, 0.35)}) {
    const auto G = zero_forcing(H, flat_channel(g), g);
    for (int i = 0; i < 5; ++i) {
      const auto xb = qpsk_block(rng, g.m());
      REQUIRE(oracle::max_abs_diff(rx_reference(tx_reference(xb, H, g), G, g), xb.x) < 1e-10);
    }
  }
}

TEST_CASE("simplified model", "[txchain]") {
  const auto g = derive_geometry(10, 512, 31);
  RngStream rng(45, {0});
  const auto xb = qpsk_block(rng, g.m());
  const auto noise = gaussian(rng, g.m());

  OverallResponse ideal;
  ideal.decimated.assign(g.m(), cplx{});
  ideal.decimated[0] = 1.0 / static_cast<double>(g.lm());
  const auto d = end_to_end_simplified(xb, ideal, noise, g);
  for (std::size_t n = 0; n < g.m(); ++n) {
    REQUIRE(std::abs(d.estimate[n] - xb.x[n] - noise[n]) < 1e-14);
    REQUIRE(std::abs(d.interference[n]) < 1e-15);
  }

  const auto H = rectangular_window(g);
  const auto flat = flat_channel(g);
  const auto Pz = overall_response(H, flat, zero_forcing(H, flat, g), g);
  for (const cplx& v : end_to_end_simplified(xb, Pz, noise, g).interference) {
    CHECK(std::abs(v) < 1e-13);
  }
}

TEST_CASE("simplified model matches the full chain through the cyclic prefix", "[txchain]") {
  const auto g = derive_geometry(10, 512, 31);
  RngStream rng(46, {0});
  for (const auto& H : {rectangular_window(g), rrc_window(g, 0.35)}) {
    std::vector<ChannelRealization> channels;
    std::vector<SymbolBlock> blocks;
    ComplexBlock stream;
    for (int f = 0; f < 6; ++f) {
      channels.push_back(realize(pedestrian_a_profile(), rng, g));
      blocks.push_back(qpsk_block(rng, g.m()));
      const auto framed = add_cp(tx_reference(blocks.back(), H, g), g);
      stream.insert(stream.end(), framed.samples.begin(), framed.samples.end());
    }
    const auto received = apply_block_fading(stream, channels, g);
    for (std::size_t f = 0; f < channels.size(); ++f) {
      const TimeFrame framed{ComplexBlock(received.begin() + static_cast<long>(f * g.nt()),
                                          received.begin() + static_cast<long>((f + 1) * g.nt())),
                             true};
      const auto G = mmse(H, channels[f], g, 10.0);
      const auto full = rx_time_equivalent(remove_cp(framed, g), G, g);
      const auto P = overall_response(H, channels[f], G, g);
      const auto simple = end_to_end_simplified(blocks[f], P, ComplexBlock(g.m()), g);
      REQUIRE(oracle::max_abs_diff(full, simple.estimate) < 1e-9);
    }
  }
}

TEST_CASE("equivalent noise pipeline matches the literal sum", "[txchain]") {
  const auto g = derive_geometry(6, 8, 2);
  RngStream rng(47, {0});
  const auto G = EqualizerResponse::custom(gaussian(rng, g.l()));
  const auto w = gaussian(rng, g.n());
  CHECK(oracle::max_abs_diff(equivalent_noise(w, G, g),
                             oracle::equivalent_noise(w, G.g_time, g.m(), g.lm(), g.ln())) < 1e-12);
}

TEST_CASE("transmit energy for the rectangular window", "[txchain]") {
  // Mean |y|^2 is (M/N)^2 sigma_x2 under the unnormalized-forward convention.
  const auto g = derive_geometry(10, 512, 31);
  const auto H = rectangular_window(g);
  RngStream rng(48, {0});
  const double sigma_x2 = 2.0;
  const std::size_t frames = 2000;
  double acc = 0.0;
  std::vector<double> per_frame;
  for (std::size_t f = 0; f < frames; ++f) {
    double e = 0.0;
    for (const cplx& v : tx_reference(qpsk_block(rng, g.m(), sigma_x2), H, g).samples) {
      e += std::norm(v);
    }
    per_frame.push_back(e / g.n());
    acc += e / g.n();
  }
  const double mean = acc / frames;
  double var = 0.0;
  for (double v : per_frame) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (frames - 1) / frames);
  const double expected = sigma_x2 * std::pow(10.0 / 512.0, 2);
  CHECK(std::abs(mean - expected) < 3.0 * sd + 1e-15);
}

TEST_CASE("qpsk symbols", "[txchain]") {
  RngStream rng(49, {0});
  const auto xb = qpsk_block(rng, 1000, 4.0);
  cplx mean{};
  for (const cplx& v : xb.x) {
    REQUIRE(std::abs(std::norm(v) - 4.0) < 1e-12);
    mean += v;
  }
  CHECK(std::abs(mean / 1000.0) < 0.3);
  CHECK_THROWS_AS(qpsk_block(rng, 4, 0.0), std::invalid_argument);
}
