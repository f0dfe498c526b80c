#include <cstdlib>
#include <stdexcept>
#include <string>

#include "scfdma/kernels.hpp"

namespace scfdma::kernels {

namespace {

struct Table {
  Isa isa;
  cplx (*dot)(std::span<const cplx>, std::span<const cplx>);
  void (*multiply)(std::span<const cplx>, std::span<const cplx>, std::span<cplx>);
  void (*accumulate_power)(std::span<const cplx>, std::span<double>);
  double (*energy)(std::span<const cplx>);
};

constexpr Table kScalar{Isa::Scalar, scalar::dot, scalar::multiply, scalar::accumulate_power,
                        scalar::energy};

#ifdef SCFDMA_HAVE_AVX2
constexpr Table kAvx2{Isa::Avx2, avx2::dot, avx2::multiply, avx2::accumulate_power,
                      avx2::energy};
#endif

const Table* table_for(Isa isa) {
#ifdef SCFDMA_HAVE_AVX2
  if (isa == Isa::Avx2) return &kAvx2;
#endif
  if (isa == Isa::Scalar) return &kScalar;
  return nullptr;
}

const Table* initial_table() {
  if (const char* env = std::getenv("SCFDMA_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && avx2_available()) return table_for(Isa::Avx2);
  }
  return avx2_available() ? table_for(Isa::Avx2) : &kScalar;
}

const Table*& current() {
  static const Table* table = initial_table();
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(SCFDMA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool available =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return available;
#else
  return false;
#endif
}

Isa active_isa() { return current()->isa; }

void select_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) {
    throw std::invalid_argument("kernels: AVX2 variant unavailable on this build or CPU");
  }
  current() = table_for(isa);
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) { return current()->dot(a, b); }

void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  current()->multiply(a, b, out);
}

void accumulate_power(std::span<const cplx> x, std::span<double> acc) {
  current()->accumulate_power(x, acc);
}

double energy(std::span<const cplx> x) { return current()->energy(x); }

}  // namespace scfdma::kernels
