#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "scfdma/kernels.hpp"
#include "scfdma/rng.hpp"

using namespace scfdma;
namespace k = scfdma::kernels;

namespace {

std::vector<k::cplx> random_block(RngStream& rng, std::size_t n) {
  std::vector<k::cplx> x(n);
  for (auto& v : x) v = rng.circular_gaussian(1.0);
  return x;
}

}  // namespace

TEST_CASE("scalar kernels against plain loops", "[kernels]") {
  RngStream rng(11, {0});
  const auto a = random_block(rng, 37);
  const auto b = random_block(rng, 37);
  k::cplx dot{};
  double energy = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    energy += std::norm(a[i]);
  }
  CHECK(std::abs(k::scalar::dot(a, b) - dot) < 1e-13);
  CHECK(std::abs(k::scalar::energy(a) - energy) < 1e-13);
}

#ifdef SCFDMA_HAVE_AVX2
TEST_CASE("avx2 kernels agree with the scalar reference", "[kernels]") {
  if (!k::avx2_available()) SKIP("CPU lacks AVX2/FMA");
  RngStream rng(12, {0});
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 127, 512, 2561}) {
    INFO("n=" << n);
    const auto a = random_block(rng, n);
    const auto b = random_block(rng, n);
    const double scale = std::max(1.0, static_cast<double>(n));

    CHECK(std::abs(k::avx2::dot(a, b) - k::scalar::dot(a, b)) < 1e-13 * scale);
    CHECK(std::abs(k::avx2::energy(a) - k::scalar::energy(a)) < 1e-13 * scale);

    std::vector<k::cplx> p(n), q(n);
    k::scalar::multiply(a, b, p);
    k::avx2::multiply(a, b, q);
    CHECK(oracle::max_abs_diff(p, q) < 1e-14);

    auto in_place = a;
    k::avx2::multiply(in_place, b, in_place);
    CHECK(oracle::max_abs_diff(in_place, p) < 1e-14);

    std::vector<double> acc_s(n, 0.5), acc_v(n, 0.5);
    k::scalar::accumulate_power(a, acc_s);
    k::avx2::accumulate_power(a, acc_v);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(acc_s[i] - acc_v[i]) < 1e-14);
  }
}

TEST_CASE("dispatcher routes to the selected variant", "[kernels]") {
  if (!k::avx2_available()) SKIP("CPU lacks AVX2/FMA");
  const k::Isa before = k::active_isa();
  k::select_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  k::select_isa(k::Isa::Avx2);
  CHECK(k::active_isa() == k::Isa::Avx2);
  k::select_isa(before);
}
#endif

TEST_CASE("isa names", "[kernels]") {
  CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
  CHECK(k::isa_name(k::Isa::Avx2) == "avx2");
}
