#pragma once

// Three-dimensional low-frequency amplitude for slabs 0 <= z <= ell, and the
// closed forms of the transversally Gaussian slab.

#include <utility>

#include "lfs/numerics.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

struct ScatteringConfig3D {
  double k = 1.0;
  double ell = 1.0;
  double theta0 = 0.0;
  double phi0 = 0.0;

  /// k > 0, ell > 0, cos(theta0) != 0.
  void validate() const;
  double kl() const noexcept { return k * ell; }
};

struct Direction3D {
  double theta = 0.0;
  double phi = 0.0;

  /// Finite angles with cos(theta) != 0.
  void validate() const;
};

struct AmplitudeResult3D {
  Complex f1;  // length units
  Complex f2;
  Complex truncated;
  int order = 2;
};

/// (sin t cos p - sin a cos b, sin t sin p - sin a sin b)
std::pair<double, double> g_vector(double theta, double phi, double alpha, double beta) noexcept;

MomentSet3D amplitude_moments_3d(const Profile3D& profile, const ScatteringConfig3D& config,
                                 const MomentOptions& options = {});

Complex f1_3d(const MomentSet3D& moments, const ScatteringConfig3D& config,
              const Direction3D& dir);
Complex f1_3d(const Profile3D& profile, const ScatteringConfig3D& config, const Direction3D& dir);

/// The (alpha, beta) integral runs over [0, pi/2] x [0, 2 pi].
Complex f2_3d(const MomentSet3D& moments, const ScatteringConfig3D& config,
              const Direction3D& dir, const QuadratureSpec& spec = {});
Complex f2_3d(const Profile3D& profile, const ScatteringConfig3D& config, const Direction3D& dir,
              const QuadratureSpec& spec = {});

AmplitudeResult3D amplitude_3d(const MomentSet3D& moments, const ScatteringConfig3D& config,
                               const Direction3D& dir, int order, const QuadratureSpec& spec = {});
AmplitudeResult3D amplitude_3d(const Profile3D& profile, const ScatteringConfig3D& config,
                               const Direction3D& dir, int order, const QuadratureSpec& spec = {});

/// sin t0 sin t cos p + (cos 2t + cos 2t0)/4 - 1/2
double gaussian_h(double theta, double phi, double theta0) noexcept;

/// (1/2pi) int_0^{pi/2} da int_0^{2pi} db sin a exp(K^2 [h(t, p-b, a) + h(a, b-p0, t0)])
double gaussian_Y(double theta, double phi, double theta0, double phi0, double kk,
                  const QuadratureSpec& spec = {});

/// Closed forms for w = z exp(-r^2 / 2L^2).
Complex gaussian_f1_3d(Complex z, double L, const ScatteringConfig3D& config,
                       const Direction3D& dir);
Complex gaussian_f2_3d(Complex z, double L, const ScatteringConfig3D& config,
                       const Direction3D& dir, const QuadratureSpec& spec = {});
AmplitudeResult3D gaussian_amplitude_3d(Complex z, double L, const ScatteringConfig3D& config,
                                        const Direction3D& dir, int order,
                                        const QuadratureSpec& spec = {});

/// |f(dir)|^2 / |f(0, 0)|^2 for the truncated amplitude of the given order.
double normalized_cross_section(const MomentSet3D& moments, const ScatteringConfig3D& config,
                                const Direction3D& dir, int order,
                                const QuadratureSpec& spec = {});
double normalized_cross_section(const Profile3D& profile, const ScatteringConfig3D& config,
                                const Direction3D& dir, int order,
                                const QuadratureSpec& spec = {});

}  // namespace lfs
