#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lfs/amp2d.hpp"
#include "lfs/error.hpp"
#include "lfs/exactborn.hpp"
#include "lfs/kernels.hpp"
#include "oracles.hpp"

using namespace lfs;

TEST_CASE("varpi branches") {
  CHECK(varpi(0.6, 1.0) == Complex{0.8, 0.0});
  CHECK(std::abs(varpi(-1.25, 1.0) - Complex{0.0, 0.75}) < 1e-15);
}

TEST_CASE("momentum grids integrate polynomials") {
  for (Substitution sub : {Substitution::direct, Substitution::sine}) {
    const MomentumGrid g = MomentumGrid::make(2.0, 41, sub);
    CHECK(g.size() == 41);
    double w = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(g.nodes[i]) < 2.0);
      w += g.weights[i];
      m2 += g.weights[i] * g.nodes[i] * g.nodes[i];
    }
    CHECK(w == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(MomentumGrid::make(1.0, 0, Substitution::sine), ValidationError);
}

TEST_CASE("kernel matrices and CSV export") {
  const Profile2D w = gaussian_y_profile(0.4, 1.0);
  const MomentSet2D m(w, 1.5);
  const MomentumGrid g = MomentumGrid::make(1.5, 7, Substitution::direct);
  const KernelMatrix n1 = build_kernel_matrix(m, g, 1, 1, 2);
  CHECK(n1.n == 7);
  CHECK(n1.at(2, 3) == kernel_n1(m, 1, 2, g.nodes[2], g.nodes[3], 1.5));
  std::ostringstream out;
  write_kernel_csv(n1, g, out);
  const std::string csv = out.str();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 49 + 1);
  CHECK(kernel_nj(m, 2, 2, 1, 0.3, -0.2, 1.5) == kernel_n2(m, 2, 1, 0.3, -0.2, 1.5));
  CHECK_THROWS_AS(kernel_nj(m, 4, 1, 1, 0.0, 0.0, 1.5), ValidationError);
}

TEST_CASE("kernel series reproduces the direct amplitude on both incidence sides") {
  const Profile2D w = gaussian_y_profile(Complex{0.5, 0.1}, 1.1);
  for (auto [t, t0] : {std::pair{0.7, -0.3}, {2.5, 0.9}, {-0.4, 3.6}, {2.9, 2.2}}) {
    const ScatteringConfig2D cfg{1.8, 0.05, t0};
    const Complex direct = amplitude_2d(w, cfg, t, 2).truncated;
    const Complex viak = amplitude_from_kernels(w, cfg, t, 2, 101);
    CHECK(std::abs(viak - direct) < 1e-8 * std::abs(direct));
    const Complex d1 = amplitude_2d(w, cfg, t, 1).truncated;
    CHECK(std::abs(amplitude_from_kernels(w, cfg, t, 1, 101) - d1) < 1e-8 * std::abs(d1));
  }
  CHECK(incidence_side(ScatteringConfig2D{1.0, 1.0, 0.2}) == Side::left);
  CHECK(incidence_side(ScatteringConfig2D{1.0, 1.0, 3.0}) == Side::right);
  CHECK_THROWS_AS(amplitude_from_kernels(w, ScatteringConfig2D{1.0, 1.0, 0.2}, 0.1, 3),
                  ValidationError);
}

TEST_CASE("third-order kernel coefficient matches the exact-Born expansion") {
  const Ex1Params p{Complex{0.1}, 500.0, 1e-2};
  const Profile2D w = ex1_profile(p);
  for (double k : {420.0, 500.0}) {
    for (double t0 : {4 * kPi / 3, -0.8}) {
      const ScatteringConfig2D cfg{k, 1e-3, t0};
      const double t = kPi / 3 + (t0 < 0 ? 0.5 : 0.0);
      const auto m = kernel_moments(w, k, 3);
      const MomentumGrid g = MomentumGrid::make(k, 161, Substitution::sine);
      const ChannelFunctions ch = assemble_channels(m, cfg, incidence_side(cfg), 3, g);
      const Complex ref3 = oracle::ex1_third_coefficient(p.z, p.alpha, p.L, k, t, t0);
      REQUIRE(std::abs(ref3) > 0.0);
      CHECK(std::abs(amplitude_coefficient_from_channels(ch, cfg, t, 1) - ex1_f1(p, cfg, t)) <
            1e-9 * std::abs(ex1_f1(p, cfg, t)));
      CHECK(std::abs(amplitude_coefficient_from_channels(ch, cfg, t, 2) - ex1_f2(p, cfg, t)) <
            1e-9 * std::abs(ex1_f2(p, cfg, t)));
      CHECK(std::abs(amplitude_coefficient_from_channels(ch, cfg, t, 3) - ref3) <
            1e-7 * std::abs(ref3));
    }
  }
}
