#include "lfs/cloak.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lfs/error.hpp"

namespace lfs {
namespace {

constexpr double kRealTol = 1e-14;

double require_real(Complex z, const char* what) {
  if (std::abs(z.imag()) > kRealTol * std::max(1.0, std::abs(z.real()))) {
    throw ValidationError(std::string(what) + " must be real for the bilayer design");
  }
  return z.real();
}

LayerThickness infeasible(std::string why) {
  LayerThickness t;
  t.feasible = false;
  t.reason = std::move(why);
  return t;
}

}  // namespace

void CoatingMaterials::validate() const {
  if (z1 == Complex{}) throw ValidationError("coating: z1 must be nonzero");
  if (z1 == z2) throw ValidationError("coating: z1 and z2 must differ");
  if (z2 == Complex{}) throw ValidationError("coating: z2 must be nonzero");
}

SlabMomentPair slab_moments(const Profile2D& slab, double k, const QuadratureSpec& spec) {
  return {[slab, k, spec](double y) { return spatial_moment_y(slab, 0, y, k, spec); },
          [slab, k, spec](double y) { return spatial_moment_y(slab, 1, y, k, spec); }};
}

LayerThickness design_bilayer(const SlabMomentPair& moments, const CoatingMaterials& materials,
                              double ell, double y) {
  materials.validate();
  if (!(ell > 0.0)) throw ValidationError("design_bilayer: ell must be > 0");
  const double z1 = require_real(materials.z1, "z1");
  const double z2 = require_real(materials.z2, "z2");
  const double w0 = require_real(moments.w0bar(y), "slab moment w0bar");
  const double w1 = require_real(moments.w1bar(y), "slab moment w1bar");
  const double radicand = (w0 * w0 + 2.0 * z1 * (w1 - w0)) / (z2 * (z2 - z1));
  if (!(radicand >= 0.0)) return infeasible("no real solution for ell2 (negative radicand)");
  LayerThickness t;
  t.ell2 = ell * std::sqrt(radicand);
  t.ell1 = -(z2 * t.ell2 + ell * w0) / z1;
  if (std::abs(t.ell1) < 1e-15 * ell) t.ell1 = 0.0;
  if (t.ell1 < 0.0) return infeasible("ell1 would be negative");
  return t;
}

LayerThickness design_profiled(const std::function<double(double)>& g, double z0,
                               const CoatingMaterials& materials, double ell, double y) {
  materials.validate();
  if (!(ell > 0.0)) throw ValidationError("design_profiled: ell must be > 0");
  if (!(z0 >= 0.0)) throw ValidationError("design_profiled: z0 must be >= 0");
  const double gy = g(y);
  if (!(gy >= 0.0)) throw ValidationError("design_profiled: g(y) must be >= 0");
  const double z1 = require_real(materials.z1, "z1");
  const double z2 = require_real(materials.z2, "z2");
  if (!(z1 < 0.0 && z2 > 0.0)) {
    return infeasible("thicknesses are real and positive only for z1 < 0 < z2");
  }
  const double a = z0 * gy;
  const double chi = a * (a - z1) / (z2 * (z2 - z1));
  LayerThickness t;
  t.ell2 = ell * std::sqrt(chi);
  t.ell1 = -ell * (z2 * std::sqrt(chi) + a) / z1;
  return t;
}

CloakDesign design_cloak(const LayerDesigner& designer, const CoatingMaterials& materials,
                         double ell, double k, std::vector<double> y_grid, double kl_c_warning) {
  materials.validate();
  if (!(ell > 0.0) || !(k > 0.0)) throw ValidationError("design_cloak: ell and k must be > 0");
  if (y_grid.empty()) throw ValidationError("design_cloak: empty y grid");
  CloakDesign d;
  d.materials = materials;
  d.ell = ell;
  d.k = k;
  d.y_grid = std::move(y_grid);
  double extent = ell;
  for (double y : d.y_grid) {
    LayerThickness t = designer(y);
    if (!t.feasible && d.geometry.feasible) {
      d.geometry.feasible = false;
      d.geometry.reason = "y=" + std::to_string(y) + ": " + t.reason;
    }
    if (t.feasible) extent = std::max(extent, ell + t.ell1 + t.ell2);
    d.samples.push_back(std::move(t));
  }
  d.geometry.ell_c = extent;
  d.geometry.ell1 = [designer](double y) {
    const LayerThickness t = designer(y);
    return t.feasible ? t.ell1 : 0.0;
  };
  d.geometry.ell2 = [designer](double y) {
    const LayerThickness t = designer(y);
    return t.feasible ? t.ell2 : 0.0;
  };
  d.kl_c = k * extent;
  d.low_frequency_ok = d.kl_c < kl_c_warning;
  return d;
}

InvisibilityReport verify_invisibility(const Profile2D& coated, double ell_c,
                                       const Profile2D& bare, double ell, double k,
                                       const std::vector<double>& y_grid,
                                       const std::vector<AnglePair>& angles,
                                       const QuadratureSpec& spec) {
  InvisibilityReport r;
  for (double y : y_grid) {
    r.residual_m0 = std::max(r.residual_m0, ell_c * std::abs(spatial_moment_y(coated, 0, y, k, spec)));
    r.residual_m1 =
        std::max(r.residual_m1, ell_c * ell_c * std::abs(spatial_moment_y(coated, 1, y, k, spec)));
    for (int i = 0; i <= 16; ++i) {
      r.max_abs_w = std::max(r.max_abs_w, std::abs(coated.value(i / 16.0, y, k)));
    }
  }
  if (angles.empty()) return r;
  MomentOptions options;
  options.quadrature = spec;
  const ScatteringConfig2D probe_c{k, ell_c, angles.front().theta0};
  const MomentSet2D mc = amplitude_moments(coated, probe_c, options);
  const MomentSet2D mb = amplitude_moments(bare, ScatteringConfig2D{k, ell, angles.front().theta0},
                                           options);
  for (const AnglePair& a : angles) {
    const ScatteringConfig2D cc{k, ell_c, a.theta0};
    const ScatteringConfig2D cb{k, ell, a.theta0};
    r.coated_f1 = std::max(r.coated_f1, std::abs(f1_2d(mc, cc, a.theta)));
    r.coated_f2 = std::max(r.coated_f2, std::abs(f2_2d(mc, cc, a.theta, spec)));
    r.bare_f1 = std::max(r.bare_f1, std::abs(f1_2d(mb, cb, a.theta)));
    r.bare_f2 = std::max(r.bare_f2, std::abs(f2_2d(mb, cb, a.theta, spec, bare.momentum_kinks)));
  }
  return r;
}

void write_geometry_csv(const CloakDesign& design, std::ostream& out) {
  char buf[128];
  out << "y,ell1,ell2,feasible\n";
  for (std::size_t i = 0; i < design.y_grid.size(); ++i) {
    const LayerThickness& t = design.samples[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", design.y_grid[i], t.ell1, t.ell2,
                  t.feasible ? 1 : 0);
    out << buf;
  }
}

nlohmann::json geometry_header(const CloakDesign& design) {
  nlohmann::json j;
  j["z1"] = complex_to_json(design.materials.z1);
  j["z2"] = complex_to_json(design.materials.z2);
  j["ell"] = design.ell;
  j["k"] = design.k;
  j["ell_c"] = design.geometry.ell_c;
  j["kl_c"] = design.kl_c;
  j["low_frequency_ok"] = design.low_frequency_ok;
  j["feasible"] = design.geometry.feasible;
  if (!design.geometry.feasible) j["reason"] = design.geometry.reason;
  return j;
}

}  // namespace lfs
