#pragma once

// Bilayer coatings that cancel both the zeroth and first x-moments of a slab,
// and with them the first- and second-order scattering amplitudes.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfs/amp2d.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

struct CoatingMaterials {
  Complex z1;  // eps_1 - 1, first layer (adjacent to the slab)
  Complex z2;  // eps_2 - 1, outer layer

  /// z1 != 0 and z1 != z2.
  void validate() const;
};

/// w0bar(y) = int_0^1 w dx_c and w1bar(y) = int_0^1 x_c w dx_c of the bare slab.
struct SlabMomentPair {
  std::function<Complex(double)> w0bar;
  std::function<Complex(double)> w1bar;
};

SlabMomentPair slab_moments(const Profile2D& slab, double k, const QuadratureSpec& spec = {});

struct LayerThickness {
  double ell1 = 0.0;
  double ell2 = 0.0;
  bool feasible = true;
  std::string reason;
};

/// Thicknesses at one y from the bare-slab moments. Complex moments or
/// materials are rejected (ValidationError); no real nonnegative solution
/// yields feasible = false with the reason.
LayerThickness design_bilayer(const SlabMomentPair& moments, const CoatingMaterials& materials,
                              double ell, double y);

/// Same for slabs w = z0 g(y) across the whole thickness.
LayerThickness design_profiled(const std::function<double(double)>& g, double z0,
                               const CoatingMaterials& materials, double ell, double y);

struct CloakDesign {
  BilayerGeometry geometry;
  CoatingMaterials materials;
  double ell = 0.0;
  double k = 0.0;
  double kl_c = 0.0;
  /// k ell_c below the warning threshold.
  bool low_frequency_ok = true;
  std::vector<double> y_grid;
  std::vector<LayerThickness> samples;
};

using LayerDesigner = std::function<LayerThickness(double)>;

/// Evaluates `designer` on y_grid, picks the smallest ell_c covering every
/// sampled ell + ell1 + ell2, and wraps the designer as the geometry. The
/// grid must resolve the maximum of the total thickness.
CloakDesign design_cloak(const LayerDesigner& designer, const CoatingMaterials& materials,
                         double ell, double k, std::vector<double> y_grid,
                         double kl_c_warning = 0.3);

struct InvisibilityReport {
  /// max_y |int_0^{ell_c} (eps_c - 1) dx| and max_y |int_0^{ell_c} x (eps_c - 1) dx|.
  double residual_m0 = 0.0;
  double residual_m1 = 0.0;
  double max_abs_w = 0.0;
  /// Largest |f1|, |f2| over the angle pairs for the coated slab (scale ell_c)
  /// and for the bare slab (scale ell).
  double coated_f1 = 0.0;
  double coated_f2 = 0.0;
  double bare_f1 = 0.0;
  double bare_f2 = 0.0;
};

struct AnglePair {
  double theta;
  double theta0;
};

InvisibilityReport verify_invisibility(const Profile2D& coated, double ell_c,
                                       const Profile2D& bare, double ell, double k,
                                       const std::vector<double>& y_grid,
                                       const std::vector<AnglePair>& angles,
                                       const QuadratureSpec& spec = {});

/// "y,ell1,ell2,feasible" rows.
void write_geometry_csv(const CloakDesign& design, std::ostream& out);
nlohmann::json geometry_header(const CloakDesign& design);

}  // namespace lfs
