#include <cmath>

#include "lfs/simd.hpp"

namespace lfs::simd::scalar {

std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double y0, double h,
                               double p) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  const std::size_t n = re.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = p * (y0 + static_cast<double>(j) * h);
    const double c = std::cos(theta);
    const double s = -std::sin(theta);
    acc_re += re[j] * c - im[j] * s;
    acc_im += re[j] * s + im[j] * c;
  }
  return {acc_re, acc_im};
}

std::complex<double> complex_dot(std::span<const double> a_re,
                                 std::span<const double> a_im,
                                 std::span<const double> b_re,
                                 std::span<const double> b_im) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  const std::size_t n = a_re.size();
  for (std::size_t j = 0; j < n; ++j) {
    acc_re += a_re[j] * b_re[j] - a_im[j] * b_im[j];
    acc_im += a_re[j] * b_im[j] + a_im[j] * b_re[j];
  }
  return {acc_re, acc_im};
}

}  // namespace lfs::simd::scalar
