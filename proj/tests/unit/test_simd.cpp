#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lfs/error.hpp"
#include "lfs/simd.hpp"

using namespace lfs;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::hypot(a[i], b[i]);
  return s;
}

}  // namespace

TEST_CASE("dispatch selection") {
  CHECK_NOTHROW(simd::force_isa(simd::Isa::scalar));
  CHECK(simd::active_isa() == simd::Isa::scalar);
  simd::reset_isa();
  if (simd::detected_isa() != simd::Isa::avx2) {
    CHECK_THROWS_AS(simd::force_isa(simd::Isa::avx2), ValidationError);
  }
  CHECK(std::string(simd::isa_name(simd::Isa::avx2)) == "avx2");
}

#if defined(LFS_HAVE_AVX2)
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (simd::detected_isa() != simd::Isa::avx2) return;
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 127u, 128u, 129u, 1025u, 8193u, 65537u}) {
    const auto re = random_vector(rng, n), im = random_vector(rng, n);
    const double scale = std::max(1.0, l1(re, im));
    for (double p : {0.0, 0.37, -5.1, 411.0}) {
      const double h = 20.0 / std::max<std::size_t>(n, 1);
      const auto a = simd::scalar::phase_sum(re, im, -10.0, h, p);
      const auto b = simd::avx2::phase_sum(re, im, -10.0, h, p);
      CHECK(std::abs(a - b) <= 1e-12 * scale);
    }
    const auto br = random_vector(rng, n), bi = random_vector(rng, n);
    const auto c = simd::scalar::complex_dot(re, im, br, bi);
    const auto d = simd::avx2::complex_dot(re, im, br, bi);
    CHECK(std::abs(c - d) <= 1e-13 * scale);
  }
}

TEST_CASE("dispatching entry points follow the forced ISA") {
  if (simd::detected_isa() != simd::Isa::avx2) return;
  std::mt19937_64 rng(11);
  const auto re = random_vector(rng, 333), im = random_vector(rng, 333);
  simd::force_isa(simd::Isa::scalar);
  const auto a = simd::phase_sum(re, im, 0.0, 0.01, 2.5);
  CHECK(a == simd::scalar::phase_sum(re, im, 0.0, 0.01, 2.5));
  simd::force_isa(simd::Isa::avx2);
  const auto b = simd::phase_sum(re, im, 0.0, 0.01, 2.5);
  CHECK(b == simd::avx2::phase_sum(re, im, 0.0, 0.01, 2.5));
  simd::reset_isa();
}
#endif
