#include <cmath>
#include <string>

#include "lfs/error.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

Profile2D coated_profile(const Profile2D& slab, double ell, const BilayerGeometry& geometry,
                         Complex z1, Complex z2, const std::vector<double>& y_check) {
  if (!(ell > 0.0)) throw ValidationError("coated_profile: slab thickness must be > 0");
  if (!geometry.ell1 || !geometry.ell2) {
    throw ValidationError("coated_profile: geometry has no thickness functions");
  }
  const double ell_c = geometry.ell_c;
  if (!(ell_c >= ell) || !std::isfinite(ell_c)) {
    throw ValidationError("coated_profile: ell_c must be finite and >= ell");
  }
  for (double y : y_check) {
    const double t1 = geometry.ell1(y);
    const double t2 = geometry.ell2(y);
    if (!(t1 >= 0.0) || !(t2 >= 0.0)) {
      throw ValidationError("coated_profile: negative layer thickness at y=" + std::to_string(y));
    }
    if (ell + t1 + t2 > ell_c * (1.0 + 1e-12)) {
      throw ValidationError("coated_profile: coating extent exceeds ell_c at y=" +
                            std::to_string(y));
    }
  }

  Profile2D w;
  w.descriptor = "coated [" + slab.descriptor + "]";
  const double scale = ell_c / ell;
  w.eval = [slab, ell, ell_c, scale, g = geometry, z1, z2](double xc, double y, double k) {
    const double x = xc * ell_c;
    if (x <= ell) return slab.value(xc * scale, y, k);
    const double e1 = ell + g.ell1(y);
    if (x <= e1) return z1;
    if (x <= e1 + g.ell2(y)) return z2;
    return Complex{};
  };
  w.x_breakpoints = [slab, ell, ell_c, scale, g = geometry](double y) {
    std::vector<double> cuts;
    for (double b : slab.breakpoints_at(y)) cuts.push_back(b / scale);
    const double e1 = ell + g.ell1(y);
    const double e2 = e1 + g.ell2(y);
    for (double e : {ell, e1, e2}) {
      if (e < ell_c) cuts.push_back(e / ell_c);
    }
    return cuts;
  };
  w.momentum_kinks = slab.momentum_kinks;
  w.decay_radius = slab.decay_radius;
  w.transform = slab.transform;
  return w;
}

}  // namespace lfs
