#include <doctest.h>

#include <cmath>
#include <random>

#include "lfs/error.hpp"
#include "lfs/exactborn.hpp"
#include "oracles.hpp"

using namespace lfs;

namespace {

const Ex1Params kFig3{Complex{0.1}, 500.0, 1e-2};

}  // namespace

TEST_CASE("support condition") {
  CHECK(is_born_exact(ex1_profile(kFig3), kFig3.alpha, 300.0));
  CHECK_FALSE(is_born_exact(gaussian_y_profile(0.1, 1e-2), 500.0, 300.0));
  CHECK_NOTHROW(BornExactProfile(ex1_profile(kFig3), 500.0, 300.0));
  CHECK_THROWS_AS(BornExactProfile(gaussian_y_profile(0.1, 1e-2), 500.0, 300.0), ValidationError);
  CHECK_THROWS_AS((Ex1Params{Complex{0.1}, -1.0, 1.0}.validate()), ValidationError);
}

TEST_CASE("exact amplitude domain") {
  const BornExactProfile w(ex1_profile(kFig3), 500.0, 300.0);
  const ScatteringConfig2D hi{600.0, 1e-3, 4 * kPi / 3};
  CHECK_THROWS_AS(exact_amplitude(w, hi, kPi / 3), DomainError);
  CHECK_THROWS_AS(ex1_exact(kFig3, hi, kPi / 3), DomainError);
}

TEST_CASE("generic exact amplitude equals the ex1 closed form") {
  const BornExactProfile w(ex1_profile(kFig3), 500.0, 300.0);
  for (double kl : {0.29, 0.35, 0.5}) {
    const ScatteringConfig2D cfg{kl / 1e-3, 1e-3, 4 * kPi / 3};
    const Complex ref = ex1_exact(kFig3, cfg, kPi / 3);
    CHECK(std::abs(exact_amplitude(w, cfg, kPi / 3) - ref) < 1e-10 * std::abs(ref));
  }
}

TEST_CASE("invisibility below alpha / 2") {
  const Profile2D w = ex1_profile(kFig3);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double t = 2 * kPi * (i + 0.5) / 12, t0 = 2 * kPi * (j + 0.5) / 12;
      const ScatteringConfig2D cfg{0.49 * kFig3.alpha, 1e-3, t0};
      CHECK(ex1_f1(kFig3, cfg, t) == Complex{});
      CHECK(ex1_f2(kFig3, cfg, t) == Complex{});
      CHECK(ex1_exact(kFig3, cfg, t) == Complex{});
    }
  }
}

TEST_CASE("second order collapses to -(i/2) c f1 for k <= alpha") {
  const Profile2D w = ex1_profile(kFig3);
  const ScatteringConfig2D cfg{480.0, 1e-3, 4 * kPi / 3};
  const MomentSet2D m = amplitude_moments(w, cfg);
  for (double t : {kPi / 3, 0.5, 1.4}) {
    const Complex f1 = f1_2d(m, cfg, t);
    const Complex f2 = f2_2d(m, cfg, t, {}, w.momentum_kinks);
    CHECK(std::abs(f2 + 0.5 * kI * c_factor(t, cfg.theta0) * f1) <= 1e-12 * std::abs(f1));
  }
}

TEST_CASE("ttv reproduces the low-order moments") {
  const Profile2D w = gaussian_y_profile(0.5, 1.0);
  const double k = 1.0, ell = 1e-3, px = 0.7, py = -0.4;
  const Complex w0 = moment_2d(w, 0, py, k), w1 = moment_2d(w, 1, py, k);
  const Complex series = -k * k * ell * (w0 - kI * ell * px * w1);
  CHECK(std::abs(ttv(w, ell, px, py, k) - series) < 1e-5 * std::abs(series));
}

TEST_CASE("x_function vanishes for xi >= 1") {
  for (double s : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    for (double s0 : {-1.0, -0.6, 0.2, 1.0}) {
      for (double xi : {1.0, 1.0000001, 1.5, 3.0}) CHECK(x_function(s, s0, xi) == 0.0);
    }
  }
}

TEST_CASE("x_function against the direct phi integral") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0), v(0.0, 1.0);
  int tested = 0;
  while (tested < 30) {
    const double s = u(rng), s0 = u(rng), xi = 0.5 * v(rng);
    const double ref = oracle::x_function_direct(s, s0, xi);
    const double got = x_function(s, s0, xi);
    if (ref == 0.0) {
      CHECK(got == 0.0);
      continue;
    }
    CHECK(std::abs(got - ref) < 1e-10 * std::abs(ref) + 1e-15);
    ++tested;
  }
}
