#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "scfdma/equalize.hpp"
#include "scfdma/sinr.hpp"

using namespace scfdma;

namespace {

const SystemGeometry kLte = derive_geometry(10, 512, 31);

}  // namespace

TEST_CASE("zf on a flat channel is the identity on the block", "[equalize]") {
  const auto H = rectangular_window(kLte);
  const auto G = zero_forcing(H, flat_channel(kLte), kLte);
  CHECK(G.kind == EqualizerKind::ZF);
  for (std::size_t k = 0; k < kLte.l(); ++k) {
    REQUIRE(G.G[k] == (k < 10 ? cplx(1.0) : cplx{}));
  }
}

TEST_CASE("zf makes every alias class sum to one", "[equalize]") {
  RngStream rng(30, {0});
  for (const auto& H : {rectangular_window(kLte), rrc_window(kLte, 0.35)}) {
    for (int i = 0; i < 200; ++i) {
      const auto ch = realize(pedestrian_a_profile(), rng, kLte);
      const auto G = zero_forcing(H, ch, kLte);
      const auto P = overall_response(H, ch, G, kLte);
      for (const cplx& s : alias_sums(P, kLte)) REQUIRE(std::abs(s - 1.0) < 1e-10);
      for (std::size_t k = 0; k < kLte.l(); ++k) {
        if (!H.in_support(k)) {
          REQUIRE(G.G[k] == cplx{});
          REQUIRE(P.P[k] == cplx{});
        }
      }
      if (H.kind() == WindowKind::Rectangular) {
        for (std::size_t k = 0; k < 10; ++k) REQUIRE(std::abs(P.P[k] - 1.0) < 1e-12);
      }
      if (i < 2) REQUIRE(oracle::max_abs_diff(G.g_time, oracle::naive_idft(G.G)) < 1e-12);
    }
  }
}

TEST_CASE("zf reports a nulled subchannel", "[equalize]") {
  const auto g = derive_geometry(4, 8, 2);
  const auto H = rectangular_window(g);
  // 1 + z^-2 has zeros at k = 2 and k = 6 of an 8-point grid; bin 2 is in the block.
  const auto ch = ChannelRealization::from_taps({{0, 1.0}, {2, 1.0}}, g);
  try {
    (void)zero_forcing(H, ch, g);
    FAIL("expected SingularSubchannel");
  } catch (const SingularSubchannel& e) {
    CHECK(e.subchannel() == 2);
  }
  CHECK_NOTHROW(mmse(H, ch, g, 10.0));
}

TEST_CASE("mmse flat channel closed form", "[equalize]") {
  const auto H = rectangular_window(kLte);
  for (double es_n0 : {0.5, 1.0, 10.0}) {
    const auto G = mmse(H, flat_channel(kLte), kLte, es_n0);
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(std::abs(G.G[k] - cplx(1.0 / (1.0 + 1.0 / es_n0))) < 1e-14);
    }
  }
  CHECK_THROWS_AS(mmse(H, flat_channel(kLte), kLte, 0.0), std::invalid_argument);
  const auto zero = ChannelRealization::from_taps({{0, 0.0}}, kLte);
  CHECK_THROWS_AS(mmse(H, zero, kLte, 1.0), std::invalid_argument);
}

TEST_CASE("mmse approaches zf at high Es/N0", "[equalize]") {
  RngStream rng(31, {0});
  const auto H = rrc_window(kLte, 0.35);
  const auto ch = realize(pedestrian_a_profile(), rng, kLte);
  const auto zf = zero_forcing(H, ch, kLte);
  const auto mm = mmse(H, ch, kLte, 1e12);
  CHECK(oracle::max_abs_diff(zf.G, mm.G) / oracle::max_abs(zf.G) < 1e-9);
}

TEST_CASE("overall response", "[equalize]") {
  RngStream rng(32, {0});
  const auto H = rrc_window(kLte, 0.35);
  const auto ch = realize(pedestrian_a_profile(), rng, kLte);
  const auto G = mmse(H, ch, kLte, 10.0);
  const auto P = overall_response(H, ch, G, kLte);
  for (std::size_t k = 0; k < kLte.l(); ++k) {
    REQUIRE(P.P[k] == H.response()[k] * ch.extended_response()[k] * G.G[k]);
  }
  const auto chained = oracle::modular_convolution(
      oracle::modular_convolution(H.filter(), ch.impulse_response()), G.g_time);
  CHECK(oracle::max_abs_diff(P.p_time, chained) < 1e-12);

  // Brute-force decimation of the naive inverse transform.
  const auto p_naive = oracle::naive_idft(P.P);
  ComplexBlock brute(kLte.m());
  for (std::size_t n = 0; n < kLte.m(); ++n) brute[n] = p_naive[n * kLte.lm()];
  CHECK(oracle::max_abs_diff(P.decimated, brute) < 1e-10);

  // Down-sampling identity: decimated = IDFT_M of (M/L) sum_s P_{sM+r}.
  auto stacked = alias_sums(P, kLte);
  for (auto& v : stacked) v *= static_cast<double>(kLte.m()) / static_cast<double>(kLte.l());
  CHECK(oracle::max_abs_diff(P.decimated, oracle::naive_idft(stacked)) < 1e-10);

  const auto none = overall_response(H, ch, EqualizerResponse::custom(ComplexBlock(kLte.l())), kLte);
  for (const cplx& v : none.P) REQUIRE(v == cplx{});
}

TEST_CASE("zf rectangular decimated response is an impulse of height 1/L_M", "[equalize]") {
  RngStream rng(33, {0});
  const auto H = rectangular_window(kLte);
  const auto ch = realize(pedestrian_a_profile(), rng, kLte);
  const auto P = overall_response(H, ch, zero_forcing(H, ch, kLte), kLte);
  CHECK(std::abs(P.decimated[0] - 1.0 / static_cast<double>(kLte.lm())) < 1e-14);
  for (std::size_t n = 1; n < kLte.m(); ++n) CHECK(std::abs(P.decimated[n]) < 1e-14);
}
