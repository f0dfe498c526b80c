#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "scfdma/geometry.hpp"

using scfdma::derive_geometry;

TEST_CASE("derive_geometry on the reference configurations", "[geometry]") {
  const auto lte = derive_geometry(10, 512, 31);
  CHECK(lte.l() == 2560);
  CHECK(lte.lm() == 256);
  CHECK(lte.ln() == 5);
  CHECK(lte.nt() == 543);

  const auto toy = derive_geometry(4, 8, 2);
  CHECK(toy.l() == 8);
  CHECK(toy.lm() == 2);
  CHECK(toy.ln() == 1);
  CHECK(toy.nt() == 10);

  const auto frac = derive_geometry(6, 8, 0);
  CHECK(frac.l() == 24);
  CHECK(frac.lm() == 4);
  CHECK(frac.ln() == 3);
  CHECK(frac.nt() == 8);
}

TEST_CASE("derive_geometry rejects bad sizes", "[geometry]") {
  CHECK_THROWS_AS(derive_geometry(0, 8, 0), std::invalid_argument);
  CHECK_THROWS_AS(derive_geometry(4, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(derive_geometry(9, 8, 0), std::invalid_argument);
}

TEST_CASE("rate structure over all M <= N <= 64", "[geometry]") {
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t m = 1; m <= n; ++m) {
      const auto g = derive_geometry(m, n, 3);
      INFO("M=" << m << " N=" << n);
      REQUIRE(g.m() * g.lm() == g.l());
      REQUIRE(g.n() * g.ln() == g.l());
      REQUIRE(oracle::euclid_gcd(g.lm(), g.ln()) == 1);
      REQUIRE(g.l() == m / oracle::euclid_gcd(m, n) * n);
      REQUIRE(g == derive_geometry(m, n, 3));
    }
  }
}

TEST_CASE("nyquist_check", "[geometry]") {
  CHECK(scfdma::nyquist_check(derive_geometry(10, 512, 31), 0.35));
  CHECK(scfdma::nyquist_check(derive_geometry(4, 8, 2), 0.0));
  CHECK_FALSE(scfdma::nyquist_check(derive_geometry(4, 8, 2), 0.5));
}
