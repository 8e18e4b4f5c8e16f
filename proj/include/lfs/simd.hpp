#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. The variant is picked at
// runtime from the CPU feature flags; LFS_SIMD=scalar in the environment pins
// the reference path.

#include <complex>
#include <span>

namespace lfs::simd {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;

/// Best instruction set supported by both this build and the running CPU.
Isa detected_isa() noexcept;

/// Instruction set currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Pin the dispatch to `isa` (tests, benchmarks). Throws ValidationError if
/// the CPU or the build lacks it.
void force_isa(Isa isa);

/// Return to automatic selection.
void reset_isa() noexcept;

/// sum_j (re[j] + i im[j]) * exp(-i p (y0 + j h))
///
/// The weighted-sample Fourier sum behind every numeric transform.
/// `re` and `im` must have equal length.
std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double y0, double h,
                               double p);

/// sum_j a[j] * b[j] over split-complex arrays of equal length.
std::complex<double> complex_dot(std::span<const double> a_re,
                                 std::span<const double> a_im,
                                 std::span<const double> b_re,
                                 std::span<const double> b_im);

namespace scalar {
std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double y0, double h,
                               double p);
std::complex<double> complex_dot(std::span<const double> a_re,
                                 std::span<const double> a_im,
                                 std::span<const double> b_re,
                                 std::span<const double> b_im);
}  // namespace scalar

#if defined(LFS_HAVE_AVX2)
namespace avx2 {
std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double y0, double h,
                               double p);
std::complex<double> complex_dot(std::span<const double> a_re,
                                 std::span<const double> a_im,
                                 std::span<const double> b_re,
                                 std::span<const double> b_im);
}  // namespace avx2
#endif

}  // namespace lfs::simd
