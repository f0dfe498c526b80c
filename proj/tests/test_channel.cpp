#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "scfdma/channel.hpp"

using namespace scfdma;

TEST_CASE("pedestrian-A profile", "[channel]") {
  const auto p = pedestrian_a_profile();
  CHECK(p.sample_delays() == std::vector<std::size_t>{0, 1, 3});
  const auto powers = p.linear_powers();
  CHECK(powers[0] == 1.0);
  CHECK(std::abs(powers[1] - std::pow(10.0, -0.924)) < 1e-15);
  CHECK(std::abs(powers[2] - std::pow(10.0, -2.28)) < 1e-15);
  CHECK(p.max_delay() == 3);
  CHECK(p.max_delay() <= derive_geometry(10, 512, 31).cp());
}

TEST_CASE("profile parsing", "[channel]") {
  std::istringstream in("delay_ns,power_db\n# comment\n0,0\n\n260.4, -3\n");
  const auto p = TapProfile::parse(in, kLteSampleDurationNs);
  CHECK(p.entries().size() == 2);
  CHECK(p.sample_delays() == std::vector<std::size_t>{0, 2});
  std::istringstream bad("0,0\nfoo,bar\n");
  CHECK_THROWS_AS(TapProfile::parse(bad, kLteSampleDurationNs), std::invalid_argument);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(TapProfile::parse(empty, kLteSampleDurationNs), std::invalid_argument);
}

TEST_CASE("realization responses", "[channel]") {
  const auto g = derive_geometry(10, 512, 31);
  RngStream rng(20, {0});
  const auto ch = realize(pedestrian_a_profile(), rng, g);
  ComplexBlock taps(g.n());
  for (const Tap& t : ch.taps()) taps[t.delay] += t.gain;
  const auto ref = oracle::naive_dft(taps);
  CHECK(oracle::max_abs_diff(ch.response(), ref) < 1e-12);
  for (std::size_t k = g.n(); k < g.l(); ++k) REQUIRE(ch.extended_response()[k] == cplx{});
  for (std::size_t k = 0; k < g.n(); ++k) REQUIRE(ch.extended_response()[k] == ch.response()[k]);
  CHECK(oracle::max_abs_diff(ch.impulse_response(),
                             oracle::naive_idft(ch.extended_response())) < 1e-12);
}

TEST_CASE("single tap gives a flat response", "[channel]") {
  const auto g = derive_geometry(4, 8, 2);
  const TapProfile one({{0.0, 0.0}}, kLteSampleDurationNs);
  RngStream rng(21, {0});
  const auto ch = realize(one, rng, g);
  for (const cplx& c : ch.response()) CHECK(std::abs(std::abs(c) - std::abs(ch.response()[0])) < 1e-14);
  CHECK(flat_channel(g).response() == ComplexBlock(8, cplx(1.0)));
}

TEST_CASE("normalized profile has unit mean energy", "[channel]") {
  const auto g = derive_geometry(4, 8, 3);
  const auto p = pedestrian_a_profile();
  double total = 0.0;
  const std::size_t draws = 100000;
  for (std::size_t i = 0; i < draws; ++i) {
    RngStream rng(22, {i});
    const auto ch = realize(p, rng, g);
    for (const Tap& t : ch.taps()) total += std::norm(t.gain);
  }
  CHECK(std::abs(total / draws - 1.0) < 0.01);
}

TEST_CASE("taps beyond the CP are rejected", "[channel]") {
  const auto g = derive_geometry(4, 8, 2);
  RngStream rng(23, {0});
  CHECK_THROWS_AS(realize(pedestrian_a_profile(), rng, g), std::invalid_argument);
  CHECK_THROWS_AS(ChannelRealization::from_taps({{3, 1.0}}, g), std::invalid_argument);
}

TEST_CASE("awgn statistics", "[channel]") {
  RngStream rng(24, {0});
  const std::size_t n = 1000000;
  const double var = 0.7;
  const auto w = awgn(rng, n, {var});
  double p = 0.0;
  cplx pseudo{};
  for (const cplx& v : w) {
    p += std::norm(v);
    pseudo += v * v;
  }
  p /= n;
  pseudo /= static_cast<double>(n);
  CHECK(std::abs(p / var - 1.0) < 0.005);
  CHECK(std::abs(pseudo) < 3.0 * var / std::sqrt(static_cast<double>(n)) * std::sqrt(2.0));
  for (const cplx& v : awgn(rng, 16, {0.0})) CHECK(v == cplx{});
  CHECK_THROWS_AS(awgn(rng, 0, {1.0}), std::invalid_argument);
}

TEST_CASE("same seed gives the same realizations", "[channel]") {
  const auto g = derive_geometry(10, 512, 31);
  RngStream a(25, {1, 2}), b(25, {1, 2}), c(25, {1, 3});
  const auto ca = realize(pedestrian_a_profile(), a, g);
  const auto cb = realize(pedestrian_a_profile(), b, g);
  const auto cc = realize(pedestrian_a_profile(), c, g);
  CHECK(ca.response() == cb.response());
  CHECK(ca.response() != cc.response());
}
