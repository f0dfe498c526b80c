#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scfdma {

/// Mixed-radix FFT plan for an arbitrary length.
///
/// Factors the length into radix-4, radix-2 and odd prime stages; odd primes
/// use a generic O(p) butterfly, so prime lengths degrade to O(n^2) but stay
/// exact. Both directions are unnormalized: forward uses e^{-j2pi kn/A},
/// backward e^{+j2pi kn/A}.
class FftPlan {
 public:
  using cplx = std::complex<double>;

  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  const std::vector<std::size_t>& radices() const { return radices_; }

  /// `in` and `out` must both hold size() elements and must not overlap.
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  void backward(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  void work(cplx* out, const cplx* in, std::size_t fstride, std::size_t stage,
            const std::vector<cplx>& twiddles, bool backward) const;
  void butterfly2(cplx* out, std::size_t fstride, std::size_t m,
                  const std::vector<cplx>& twiddles) const;
  void butterfly4(cplx* out, std::size_t fstride, std::size_t m,
                  const std::vector<cplx>& twiddles, bool backward) const;
  void butterfly_generic(cplx* out, std::size_t fstride, std::size_t m, std::size_t p,
                         const std::vector<cplx>& twiddles) const;

  std::size_t n_;
  std::vector<std::size_t> radices_;
  // stage_len_[i] is the sub-transform length below stage i.
  std::vector<std::size_t> stage_len_;
  std::vector<cplx> forward_twiddles_;
  std::vector<cplx> backward_twiddles_;
};

/// Plan cache local to the calling thread.
const FftPlan& fft_plan(std::size_t n);

}  // namespace scfdma
