#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lfs/cloak.hpp"
#include "lfs/error.hpp"

using namespace lfs;

namespace {

const CoatingMaterials kFig4{Complex{-0.5}, Complex{0.2}};

std::vector<double> y_grid(double extent, int n) {
  std::vector<double> ys;
  for (int i = -n; i <= n; ++i) ys.push_back(extent * i / n);
  return ys;
}

}  // namespace

TEST_CASE("trivial and degenerate designs") {
  const SlabMomentPair zero{[](double) { return Complex{}; }, [](double) { return Complex{}; }};
  const LayerThickness t = design_bilayer(zero, kFig4, 1.0, 0.0);
  CHECK(t.feasible);
  CHECK(t.ell1 == 0.0);
  CHECK(t.ell2 == 0.0);
  CHECK_THROWS_AS(design_bilayer(zero, {0.3, 0.3}, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(design_bilayer(zero, {0.0, 0.3}, 1.0, 0.0), ValidationError);
  const SlabMomentPair lossy{[](double) { return Complex{0.1, 0.1}; },
                             [](double) { return Complex{0.05}; }};
  CHECK_THROWS_AS(design_bilayer(lossy, kFig4, 1.0, 0.0), ValidationError);

  auto g0 = [](double) { return 0.0; };
  const LayerThickness p = design_profiled(g0, 0.5, kFig4, 1.0, 0.0);
  CHECK(p.ell1 == 0.0);
  CHECK(p.ell2 == 0.0);
  const LayerThickness bad = design_profiled([](double) { return 1.0; }, 0.5, {0.5, 0.2}, 1.0, 0.0);
  CHECK_FALSE(bad.feasible);
  CHECK_FALSE(bad.reason.empty());
  CHECK_THROWS_AS(design_profiled([](double) { return -1.0; }, 0.5, kFig4, 1.0, 0.0),
                  ValidationError);
}

TEST_CASE("negative radicand is reported as infeasible") {
  // w0 = 0.1, w1 = 0.5: [0.01 + 2 (-0.5)(0.4)] / [0.2 (0.7)] < 0
  const SlabMomentPair m{[](double) { return Complex{0.1}; }, [](double) { return Complex{0.5}; }};
  const LayerThickness t = design_bilayer(m, kFig4, 1.0, 0.0);
  CHECK_FALSE(t.feasible);
}

TEST_CASE("Gaussian slab cloak at y = 0") {
  const double ell = 1.0;
  for (double z0 : {1.0, 0.5}) {
    const CoatingMaterials mat{-z0, 0.4 * z0};
    const Profile2D slab = gaussian_y_profile(z0, 2 * ell);
    const LayerThickness t = design_bilayer(slab_moments(slab, 0.05), mat, ell, 0.0);
    CHECK(t.ell2 == doctest::Approx(std::sqrt(25.0 / 7.0)).epsilon(1e-13));
    CHECK(t.ell1 == doctest::Approx(1.0 + 0.4 * std::sqrt(25.0 / 7.0)).epsilon(1e-13));
  }
}

TEST_CASE("profiled and moment-based designs agree; thicknesses fall off with |y|") {
  const double ell = 1.0, L = 2.0, z0 = 0.5;
  const Profile2D slab = gaussian_y_profile(z0, L);
  const SlabMomentPair m = slab_moments(slab, 0.05);
  auto g = [L](double y) { return std::exp(-y * y / (2 * L * L)); };
  double prev1 = 1e300, prev2 = 1e300;
  for (double y = 0.0; y <= 8.0; y += 0.5) {
    const LayerThickness a = design_bilayer(m, kFig4, ell, y);
    const LayerThickness b = design_profiled(g, z0, kFig4, ell, y);
    CHECK(std::abs(a.ell1 - b.ell1) < 1e-12);
    CHECK(std::abs(a.ell2 - b.ell2) < 1e-12);
    CHECK(a.ell2 >= 0.0);
    CHECK(a.ell1 < prev1);
    CHECK(a.ell2 < prev2);
    CHECK(std::abs(design_bilayer(m, kFig4, ell, -y).ell1 - a.ell1) < 1e-15);
    prev1 = a.ell1;
    prev2 = a.ell2;
  }
}

TEST_CASE("designed cloak nulls the moments and the amplitudes") {
  const double ell = 1.0, k = 0.05;
  const Profile2D slab = gaussian_y_profile(0.5, 2 * ell);
  const SlabMomentPair m = slab_moments(slab, k);
  const auto ys = y_grid(10.0, 40);
  const CloakDesign d =
      design_cloak([&](double y) { return design_bilayer(m, kFig4, ell, y); }, kFig4, ell, k, ys);
  CHECK(d.geometry.feasible);
  CHECK(d.geometry.ell_c == doctest::Approx(1.0 + 1.4 * std::sqrt(25.0 / 7.0) + 1.0));
  CHECK(d.low_frequency_ok);
  const Profile2D coated = coated_profile(slab, ell, d.geometry, kFig4.z1, kFig4.z2, ys);
  const InvisibilityReport r = verify_invisibility(coated, d.geometry.ell_c, slab, ell, k, ys,
                                                   {{0.3, 0.1}, {2.0, -0.5}, {-2.5, 3.3}});
  CHECK(r.residual_m0 < 1e-12 * d.geometry.ell_c * r.max_abs_w);
  CHECK(r.residual_m1 < 1e-12 * d.geometry.ell_c * d.geometry.ell_c * r.max_abs_w);
  CHECK(r.coated_f1 < 1e-8 * r.bare_f1);
  CHECK(r.coated_f2 < 1e-8 * r.bare_f2);

  std::ostringstream csv;
  write_geometry_csv(d, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("y,ell1,ell2,feasible\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 82);
  const auto header = geometry_header(d);
  CHECK(header.at("ell_c").get<double>() == d.geometry.ell_c);
  CHECK(header.at("feasible").get<bool>());
}

TEST_CASE("zero-thickness coating leaves the bare moments") {
  const double ell = 1.0;
  const Profile2D slab = gaussian_y_profile(0.5, 2.0);
  BilayerGeometry geo;
  geo.ell1 = [](double) { return 0.0; };
  geo.ell2 = [](double) { return 0.0; };
  geo.ell_c = ell;
  const Profile2D coated = coated_profile(slab, ell, geo, kFig4.z1, kFig4.z2, {0.0});
  const InvisibilityReport r = verify_invisibility(coated, ell, slab, ell, 0.05, {0.0, 1.0}, {});
  CHECK(r.residual_m0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.residual_m1 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("a design is specific to its wavenumber") {
  // z0(k) = 0.5 k / k1: the cloak built at k1 leaves residual moments at k2.
  const double ell = 1.0, k1 = 0.05, k2 = 0.08;
  Profile2D slab = gaussian_y_profile(0.5, 2.0);
  slab.analytic_transform = nullptr;
  slab.analytic_moment = nullptr;
  slab.eval = [](double, double y, double k) {
    return Complex{0.5 * k / 0.05 * std::exp(-y * y / 8.0)};
  };
  const SlabMomentPair m = slab_moments(slab, k1);
  const auto ys = y_grid(8.0, 16);
  const CloakDesign d =
      design_cloak([&](double y) { return design_bilayer(m, kFig4, ell, y); }, kFig4, ell, k1, ys);
  const Profile2D coated = coated_profile(slab, ell, d.geometry, kFig4.z1, kFig4.z2, ys);
  const InvisibilityReport at1 = verify_invisibility(coated, d.geometry.ell_c, slab, ell, k1, ys, {});
  const InvisibilityReport at2 = verify_invisibility(coated, d.geometry.ell_c, slab, ell, k2, ys, {});
  CHECK(at1.residual_m0 < 1e-12);
  CHECK(at2.residual_m0 > 0.1);
}
