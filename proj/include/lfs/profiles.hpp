#pragma once

// Permittivity deviations w = eps - 1 of planar slabs. The longitudinal
// coordinate is always the unit-scaled x_c = x / ell in [0, 1]; w vanishes
// outside that interval.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfs/numerics.hpp"

namespace lfs {

/// Index of the ordered-simplex pair moment
/// int_0^1 dx2 int_0^x2 dx1 (x2 - x1) FT_y[w(x1,.) w(x2,.)](q)
/// inside a moment set (used by the third-order kernel).
inline constexpr int kQSimplex = 3;

struct Profile2D {
  std::string descriptor;
  /// w(x_c, y; k) for x_c in [0, 1].
  std::function<Complex(double, double, double)> eval;
  /// Optional: w~(x_c, p; k), the transform in y.
  std::function<Complex(double, double, double)> analytic_transform;
  /// Optional shortcut: (l, p, k) -> int_0^1 x_c^l w~(x_c, p; k) dx_c, l in {0,1,2}.
  std::function<Complex(int, double, double)> analytic_moment;
  /// Optional: (x1, x2, q, k) -> FT_y[w(x1,.) w(x2,.)](q).
  std::function<Complex(double, double, double, double)> analytic_product_transform;
  /// Optional: (q, k) -> the ordered-simplex pair moment (see kQSimplex).
  std::function<Complex(double, double)> analytic_q_simplex;
  /// Optional: interior x_c discontinuities at a given y.
  std::function<std::vector<double>(double)> x_breakpoints;
  /// Momenta at which the transforms have kinks or jumps (quadrature hints).
  std::vector<double> momentum_kinks;
  /// |w| is negligible for |y| > decay_radius.
  double decay_radius = 1.0;
  /// Sampling used when a transform has to be computed numerically.
  TransformSpec transform;

  /// w with the zero convention outside x_c in [0, 1].
  Complex value(double xc, double y, double k) const;
  std::vector<double> breakpoints_at(double y) const;
  bool has_analytic_moments() const noexcept {
    return static_cast<bool>(analytic_moment) || static_cast<bool>(analytic_transform);
  }
};

struct Profile3D {
  std::string descriptor;
  /// w(rx, ry, z_c; k) for z_c in [0, 1].
  std::function<Complex(double, double, double, double)> eval;
  /// Optional: (px, py, z_c, k) -> 2D transform in the transverse plane.
  std::function<Complex(double, double, double, double)> analytic_transform;
  /// Optional shortcut: (l, px, py, k) -> moment, l in {0,1}.
  std::function<Complex(int, double, double, double)> analytic_moment;
  std::vector<double> z_breakpoints;
  double decay_radius = 1.0;
  TransformSpec transform;

  Complex value(double rx, double ry, double zc, double k) const;
  bool has_analytic_moments() const noexcept {
    return static_cast<bool>(analytic_moment) || static_cast<bool>(analytic_transform);
  }
};

struct MomentOptions {
  /// analytic: use registered transforms when the profile has them, numeric
  /// otherwise. numeric: always sample and transform.
  TransformScheme scheme = TransformScheme::analytic;
  /// Overrides the profile's own sampling when set.
  std::optional<TransformSpec> transform;
  QuadratureSpec quadrature;
};

/// Transformed moments of one 2D profile at one k, prepared once and then
/// evaluated at arbitrary momenta. Numeric moments integrate over x_c first
/// and transform the resulting function of y.
class MomentSet2D {
 public:
  MomentSet2D(const Profile2D& profile, double k, std::vector<int> indices = {0, 1},
              const MomentOptions& options = {});

  /// l in {0,1,2} or kQSimplex; the index must have been requested.
  Complex operator()(int l, double p) const;
  bool is_analytic() const noexcept { return analytic_; }
  double k() const noexcept { return k_; }

 private:
  const Profile2D* profile_;
  double k_;
  bool analytic_;
  QuadratureSpec quad_;
  std::array<std::optional<FourierSampler1D>, 4> numeric_;
  std::array<bool, 4> requested_{};
};

class MomentSet3D {
 public:
  MomentSet3D(const Profile3D& profile, double k, std::vector<int> indices = {0, 1},
              const MomentOptions& options = {});

  Complex operator()(int l, double px, double py) const;
  bool is_analytic() const noexcept { return analytic_; }

 private:
  const Profile3D* profile_;
  double k_;
  bool analytic_;
  QuadratureSpec quad_;
  std::array<std::optional<FourierSampler2D>, 2> numeric_;
  std::array<bool, 2> requested_{};
};

Complex moment_2d(const Profile2D& profile, int l, double p, double k,
                  const MomentOptions& options = {});
Complex moment_3d(const Profile3D& profile, int l, double px, double py, double k,
                  const MomentOptions& options = {});

/// int_0^1 x_c^l w(x_c, y; k) dx_c at fixed y, l in {0,1,2}.
Complex spatial_moment_y(const Profile2D& profile, int l, double y, double k,
                         const QuadratureSpec& spec = {});

/// FT_y[w(x1,.) w(x2,.)](q), analytic when registered, numeric otherwise.
Complex product_transform(const Profile2D& profile, double x1, double x2, double q, double k,
                          const MomentOptions& options = {});

// ---------------------------------------------------------------- catalog

/// Longitudinal factor X(x_c) of a separable profile X(x_c) g(y).
struct XFactor {
  std::string descriptor;
  std::function<Complex(double)> eval;
  std::array<Complex, 3> moments{};  // int_0^1 x^l X(x) dx
  Complex simplex{};                 // int_0^1 dx2 int_0^x2 dx1 (x2-x1) X(x1) X(x2)
  std::vector<double> breakpoints;
};

/// Transverse envelope g(y) with its transform and the transform of g^2.
struct YEnvelope {
  std::string descriptor;
  std::function<Complex(double)> eval;
  std::function<Complex(double)> transform;
  std::function<Complex(double)> square_transform;
  std::vector<double> momentum_kinks;
  double decay_radius = 1.0;
  TransformSpec numeric;
};

XFactor x_constant(Complex value);
/// sum_n coeffs[n] x^n
XFactor x_polynomial(std::vector<Complex> coeffs);
/// values[i] on (edges[i], edges[i+1]]; edges must start at 0, end at 1 and increase.
XFactor x_layers(std::vector<double> edges, std::vector<Complex> values);

/// exp(-y^2 / 2L^2)
YEnvelope y_gaussian(double L);
/// exp(i alpha y) / (y/L + i)^2, whose transform vanishes for p <= alpha.
YEnvelope y_ex1(double alpha, double L);

Profile2D separable_profile(const XFactor& x, const YEnvelope& y);

Profile2D zero_profile_2d();
/// z exp(i alpha y) / (y/L + i)^2, independent of x_c.
Profile2D ex1_profile(Complex z, double alpha, double L);
/// z0 exp(-y^2 / 2L^2) across the whole slab.
Profile2D gaussian_y_profile(Complex z0, double L);

/// Bilinear interpolation of values on a uniform (x_c, y) grid over
/// [0,1] x [-y_extent, y_extent]; row-major with x_c as the slow index.
Profile2D sampled_profile(std::size_t nx, std::size_t ny, double y_extent,
                          std::vector<Complex> values);

Profile3D zero_profile_3d();
/// z exp(-r^2 / 2L^2), independent of z_c.
Profile3D gaussian_profile_3d(Complex z, double L);

// ---------------------------------------------------------------- coating

/// Thicknesses of a two-layer coating on the x = ell face of a slab.
struct BilayerGeometry {
  std::function<double(double)> ell1;
  std::function<double(double)> ell2;
  double ell_c = 0.0;
  bool feasible = true;
  std::string reason;
};

/// The slab of thickness `ell` followed by layers of eps-1 = z1 and z2,
/// re-expressed on the unit interval of the total thickness geometry.ell_c.
/// `y_check` lists transverse positions at which the extent
/// ell + ell1 + ell2 <= ell_c is enforced.
Profile2D coated_profile(const Profile2D& slab, double ell, const BilayerGeometry& geometry,
                         Complex z1, Complex z2, const std::vector<double>& y_check);

// ---------------------------------------------------------------- JSON

/// {"type": ..., "params": {...}, "decay_radius": ..., "sample_count": ...}
/// Complex numbers are either a JSON number or [re, im].
Profile2D profile_2d_from_json(const nlohmann::json& j);
Profile3D profile_3d_from_json(const nlohmann::json& j);
Complex complex_from_json(const nlohmann::json& j);
/// {"kind": "constant"|"polynomial"|"layers", ...}
XFactor x_factor_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(Complex z);

}  // namespace lfs
