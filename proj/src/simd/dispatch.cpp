#include <atomic>
#include <cstdlib>
#include <cstring>

#include "lfs/error.hpp"
#include "lfs/simd.hpp"

namespace lfs::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(LFS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa auto_select() noexcept {
  if (const char* env = std::getenv("LFS_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::scalar;
  }
  return detected_isa();
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(auto_select())};
  return slot;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept {
  static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() noexcept { return static_cast<Isa>(active_slot().load(std::memory_order_relaxed)); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) {
    throw ValidationError("AVX2 kernels are not available on this build/CPU");
  }
  active_slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept {
  active_slot().store(static_cast<int>(auto_select()), std::memory_order_relaxed);
}

std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double y0, double h,
                               double p) {
#if defined(LFS_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::phase_sum(re, im, y0, h, p);
#endif
  return scalar::phase_sum(re, im, y0, h, p);
}

std::complex<double> complex_dot(std::span<const double> a_re,
                                 std::span<const double> a_im,
                                 std::span<const double> b_re,
                                 std::span<const double> b_im) {
#if defined(LFS_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::complex_dot(a_re, a_im, b_re, b_im);
#endif
  return scalar::complex_dot(a_re, a_im, b_re, b_im);
}

}  // namespace lfs::simd
