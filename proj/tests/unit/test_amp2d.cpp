#include <doctest.h>

#include <cmath>
#include <random>

#include "lfs/amp2d.hpp"
#include "lfs/error.hpp"
#include "lfs/exactborn.hpp"
#include "oracles.hpp"

using namespace lfs;

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS((ScatteringConfig2D{1.0, 1.0, kPi / 2}.validate()), ValidationError);
  CHECK_THROWS_AS((ScatteringConfig2D{1.0, 1.0, -kPi / 2}.validate()), ValidationError);
  CHECK_THROWS_AS((ScatteringConfig2D{0.0, 1.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((ScatteringConfig2D{1.0, -1.0, 0.0}.validate()), ValidationError);
  CHECK_NOTHROW((ScatteringConfig2D{1.0, 1.0, 4 * kPi / 3}.validate()));
  CHECK_THROWS_AS(validate_detector_angle(3 * kPi / 2), ValidationError);
  CHECK_NOTHROW(validate_detector_angle(kPi / 3));
  CHECK(s_factor(kPi / 3, 4 * kPi / 3) == doctest::Approx(std::sqrt(3.0)));
  CHECK(c_factor(0.0, kPi) == doctest::Approx(2.0));
}

TEST_CASE("zero profile does not scatter") {
  const Profile2D w = zero_profile_2d();
  const ScatteringConfig2D cfg{2.0, 0.1, 0.3};
  const AmplitudeResult2D r = amplitude_2d(w, cfg, 2.0, 2);
  CHECK(r.f1 == Complex{});
  CHECK(r.f2 == Complex{});
  CHECK(r.truncated == Complex{});
}

TEST_CASE("first order is linear and second order splits into linear and bilinear parts") {
  const ScatteringConfig2D cfg{1.7, 0.05, -0.4};
  const double theta = 2.2;
  const Profile2D a = gaussian_y_profile(0.3, 1.2), b = gaussian_y_profile(0.6, 1.2);
  const MomentSet2D ma = amplitude_moments(a, cfg), mb = amplitude_moments(b, cfg);
  CHECK(std::abs(f1_2d(mb, cfg, theta) - 2.0 * f1_2d(ma, cfg, theta)) < 1e-15);
  const F2Terms ta = f2_2d_terms(ma, cfg, theta), tb = f2_2d_terms(mb, cfg, theta);
  CHECK(std::abs(tb.linear - 2.0 * ta.linear) < 1e-15);
  CHECK(std::abs(tb.bilinear - 4.0 * ta.bilinear) < 1e-10 * std::abs(tb.bilinear));
  CHECK(std::abs(f2_2d(ma, cfg, theta) - (ta.linear + ta.bilinear)) < 1e-15);

  const AmplitudeResult2D r1 = amplitude_2d(a, cfg, theta, 1), r2 = amplitude_2d(a, cfg, theta, 2);
  CHECK(std::abs(r1.truncated - cfg.kl() * r1.f1) < 1e-15);
  CHECK(std::abs(r2.truncated - cfg.kl() * r2.f1 - cfg.kl() * cfg.kl() * r2.f2) < 1e-15);
  CHECK(cross_section_2d(a, cfg, theta, 2) == doctest::Approx(std::norm(r2.truncated)));
  CHECK_THROWS_AS(amplitude_2d(a, cfg, theta, 3), ValidationError);
}

TEST_CASE("first order is reciprocal") {
  const Profile2D w = gaussian_y_profile(Complex{0.4, 0.1}, 0.8);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 10; ++i) {
    const double t = u(rng), t0 = u(rng) + (i % 2) * kPi;
    const ScatteringConfig2D c{2.1, 0.1, t0}, r{2.1, 0.1, t + kPi};
    CHECK(std::abs(f1_2d(w, c, t) - f1_2d(w, r, t0 + kPi)) < 1e-14);
  }
}

TEST_CASE("f2 against a midpoint-rule oracle") {
  const Complex z0{0.7, -0.2};
  const double L = 1.3;
  const Profile2D w = gaussian_y_profile(z0, L);
  for (auto [k, t, t0] : {std::tuple{1.0, 0.4, -0.9}, {2.5, 2.0, 0.3}, {0.6, -2.8, 3.5}}) {
    const ScatteringConfig2D cfg{k, 0.1, t0};
    const Complex ref = oracle::f2_gaussian_riemann(z0, L, k, t, t0);
    CHECK(std::abs(f2_2d(w, cfg, t) - ref) < 1e-8 * std::abs(ref));
  }
}

TEST_CASE("ex1 closed forms match the generic path") {
  const Ex1Params p{Complex{0.1}, 500.0, 1e-2};
  const Profile2D w = ex1_profile(p);
  for (double k : {290.0, 450.0, 500.0, 650.0}) {
    const ScatteringConfig2D cfg{k, 1e-3, 4 * kPi / 3};
    for (double t : {kPi / 3, 0.1, 1.2}) {
      const Complex f1 = ex1_f1(p, cfg, t), f2 = ex1_f2(p, cfg, t);
      CHECK(std::abs(f1_2d(w, cfg, t) - f1) < 1e-13 * std::max(1e-3, std::abs(f1)));
      const Complex g2 = f2_2d(w, cfg, t, QuadratureSpec{1e-11, 1e-16, 500});
      CHECK(std::abs(g2 - f2) < 1e-8 * std::max(1e-3, std::abs(f2)));
    }
  }
}
