// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "lfs/simd.hpp"

namespace lfs::simd::avx2 {
namespace {

// Phases are advanced by complex rotation and re-seeded exactly every
// kReseedSteps vector steps, which bounds the accumulated rounding drift to a
// few dozen ulps.
constexpr std::size_t kReseedSteps = 32;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double y0, double h,
                               double p) {
  const std::size_t n = re.size();
  const std::size_t n4 = n - n % 4;
  const double* pr = re.data();
  const double* pi = im.data();

  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const double step = 4.0 * p * h;
  const __m256d rot_re = _mm256_set1_pd(std::cos(step));
  const __m256d rot_im = _mm256_set1_pd(-std::sin(step));

  alignas(32) double seed_re[4];
  alignas(32) double seed_im[4];
  std::size_t j = 0;
  while (j < n4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double theta = p * (y0 + static_cast<double>(j + l) * h);
      seed_re[l] = std::cos(theta);
      seed_im[l] = -std::sin(theta);
    }
    __m256d er = _mm256_load_pd(seed_re);
    __m256d ei = _mm256_load_pd(seed_im);
    const std::size_t block_end = std::min(n4, j + 4 * kReseedSteps);
    for (; j < block_end; j += 4) {
      const __m256d a = _mm256_loadu_pd(pr + j);
      const __m256d b = _mm256_loadu_pd(pi + j);
      acc_re = _mm256_fmadd_pd(a, er, acc_re);
      acc_re = _mm256_fnmadd_pd(b, ei, acc_re);
      acc_im = _mm256_fmadd_pd(a, ei, acc_im);
      acc_im = _mm256_fmadd_pd(b, er, acc_im);
      const __m256d nr = _mm256_fmsub_pd(er, rot_re, _mm256_mul_pd(ei, rot_im));
      const __m256d ni = _mm256_fmadd_pd(er, rot_im, _mm256_mul_pd(ei, rot_re));
      er = nr;
      ei = ni;
    }
  }

  double sr = hsum(acc_re);
  double si = hsum(acc_im);
  for (; j < n; ++j) {
    const double theta = p * (y0 + static_cast<double>(j) * h);
    const double c = std::cos(theta);
    const double s = -std::sin(theta);
    sr += pr[j] * c - pi[j] * s;
    si += pr[j] * s + pi[j] * c;
  }
  return {sr, si};
}

std::complex<double> complex_dot(std::span<const double> a_re,
                                 std::span<const double> a_im,
                                 std::span<const double> b_re,
                                 std::span<const double> b_im) {
  const std::size_t n = a_re.size();
  const std::size_t n4 = n - n % 4;
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j < n4; j += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re.data() + j);
    const __m256d ai = _mm256_loadu_pd(a_im.data() + j);
    const __m256d br = _mm256_loadu_pd(b_re.data() + j);
    const __m256d bi = _mm256_loadu_pd(b_im.data() + j);
    acc_re = _mm256_fmadd_pd(ar, br, acc_re);
    acc_re = _mm256_fnmadd_pd(ai, bi, acc_re);
    acc_im = _mm256_fmadd_pd(ar, bi, acc_im);
    acc_im = _mm256_fmadd_pd(ai, br, acc_im);
  }
  double sr = hsum(acc_re);
  double si = hsum(acc_im);
  for (; j < n; ++j) {
    sr += a_re[j] * b_re[j] - a_im[j] * b_im[j];
    si += a_re[j] * b_im[j] + a_im[j] * b_re[j];
  }
  return {sr, si};
}

}  // namespace lfs::simd::avx2
