#include <doctest.h>

#include <cmath>

#include "lfs/error.hpp"
#include "lfs/numerics.hpp"

using namespace lfs;

TEST_CASE("step, sinc and sj") {
  CHECK(heaviside(0.0) == 1.0);
  CHECK(heaviside(-1e-300) == 0.0);
  CHECK(sinc(0.0) == 1.0);
  for (double x : {1e-8, 5e-3, 0.00999, 0.01, 0.0101, 0.7, 12.0}) {
    const double ref = x < 1e-6 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    CHECK(sinc(x) == doctest::Approx(ref).epsilon(1e-15));
    CHECK(sinc(-x) == sinc(x));
  }
  CHECK(sj(0, 0.3) == doctest::Approx(0.3));
  CHECK(sj(1, 0.3) == doctest::Approx(-0.3 * 0.3 * 0.3 / 6.0));
  CHECK(sj(2, 2.0) == doctest::Approx(32.0 / 120.0));
  CHECK(sj(3, -1.0) == 0.0);
  CHECK_THROWS_AS(sj(200, 1e10), NumericalError);
}

TEST_CASE("Gauss-Kronrod quadrature") {
  CHECK(std::abs(integrate_1d([](double x) { return Complex{std::sin(x)}; }, 0.0, kPi) - 2.0) <
        1e-12);

  const Complex osc = integrate_1d([](double x) { return std::exp(kI * 50.0 * x); }, 0.0, 1.0,
                                   {1e-12, 1e-14, 500});
  const Complex ref = (std::exp(kI * 50.0) - 1.0) / (kI * 50.0);
  CHECK(std::abs(osc - ref) < 1e-12);

  // A jump at x = 1/3 announced as a breakpoint.
  const double cut[] = {1.0 / 3.0};
  const Complex jump = integrate_1d([](double x) { return Complex{x < 1.0 / 3.0 ? 1.0 : 4.0}; },
                                    0.0, 1.0, {}, cut);
  CHECK(std::abs(jump - 3.0) < 1e-13);

  CHECK(std::abs(integrate_1d([](double) { return Complex{1.0}; }, 2.0, 2.0)) == 0.0);
  CHECK(std::abs(integrate_1d([](double x) { return Complex{x}; }, 1.0, 0.0) + 0.5) < 1e-15);
}

TEST_CASE("quadrature failure carries the estimate") {
  QuadratureSpec spec{1e-15, 1e-300, 3};
  try {
    integrate_1d([](double x) { return Complex{1.0 / std::sqrt(std::abs(x - 0.3))}; }, 0.0, 1.0,
                 spec);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::abs(e.estimate()) > 1.0);
    CHECK(e.error_estimate() > 0.0);
  }
  CHECK_THROWS_AS(integrate_1d([](double) { return Complex{}; }, 0.0, 1.0, {-1.0, 0.0, 10}),
                  ValidationError);
}

TEST_CASE("iterated 2D quadrature") {
  const Complex v = integrate_2d([](double u, double v) { return Complex{u * v * v, u}; }, 0.0,
                                 1.0, 0.0, 2.0);
  CHECK(v.real() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("off-grid Fourier transforms") {
  TransformSpec spec;
  spec.truncation_radius = 12.0;
  spec.sample_count = 512;
  FourierSampler1D g([](double y) { return Complex{std::exp(-0.5 * y * y)}; }, spec);
  for (double p : {0.0, 0.123456, 1.5, 3.3}) {
    const double ref = std::sqrt(2.0 * kPi) * std::exp(-0.5 * p * p);
    CHECK(std::abs(g.transform(p) - ref) < 1e-12);
  }
  // A shift shows up as a phase.
  FourierSampler1D shifted([](double y) { return Complex{std::exp(-0.5 * (y - 1) * (y - 1))}; },
                           spec);
  CHECK(std::abs(shifted.transform(0.7) - std::exp(-kI * 0.7) * g.transform(0.7)) < 1e-12);

  TransformSpec spec2 = spec;
  spec2.sample_count = 128;
  const Complex v = fourier_2d(
      [](double x, double y) { return Complex{std::exp(-0.5 * (x * x + y * y))}; }, 0.4, -0.9,
      spec2);
  CHECK(std::abs(v - 2.0 * kPi * std::exp(-0.5 * (0.16 + 0.81))) < 1e-11);
}

TEST_CASE("Fourier edge decay check") {
  TransformSpec spec;
  spec.truncation_radius = 3.0;
  spec.sample_count = 64;
  CHECK_THROWS_AS(fourier_1d([](double y) { return Complex{1.0 / (1.0 + y * y)}; }, 0.0, spec),
                  NumericalError);
  // Roundoff-level functions pass once a scale is supplied.
  auto noise = [](double y) { return Complex{1e-17 * std::cos(y)}; };
  CHECK_THROWS_AS(fourier_1d(noise, 0.0, spec), NumericalError);
  spec.edge_scale = 1.0;
  CHECK_NOTHROW(fourier_1d(noise, 0.0, spec));

  TransformSpec bad;
  bad.sample_count = 1000;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.sample_count = 1024;
  bad.truncation_radius = -1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
