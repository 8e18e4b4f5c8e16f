#pragma once

// Two-dimensional low-frequency amplitude: f ~ f1 (k ell) + f2 (k ell)^2.

#include "lfs/numerics.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

struct ScatteringConfig2D {
  double k = 1.0;
  double ell = 1.0;
  double theta0 = 0.0;

  /// k > 0, ell > 0, cos(theta0) != 0.
  void validate() const;
  double kl() const noexcept { return k * ell; }
  double p0() const;
  /// varpi(p0) = k |cos theta0|
  double varpi0() const;
};

struct AmplitudeResult2D {
  Complex f1;
  Complex f2;
  Complex truncated;
  int order = 2;
};

/// Detector angles on the lines cos(theta) = 0 are not in the far zone of
/// either half-space.
void validate_detector_angle(double theta);

double s_factor(double theta, double theta0) noexcept;
double c_factor(double theta, double theta0) noexcept;

/// Moment set (l = 0, 1) of `profile` at config.k.
MomentSet2D amplitude_moments(const Profile2D& profile, const ScatteringConfig2D& config,
                              const MomentOptions& options = {});

Complex f1_2d(const MomentSet2D& moments, const ScatteringConfig2D& config, double theta);
Complex f1_2d(const Profile2D& profile, const ScatteringConfig2D& config, double theta);

/// The two pieces of f2: linear in w (the moment-one term) and bilinear in w
/// (the phi integral), so that f2 = linear + bilinear.
struct F2Terms {
  Complex linear;
  Complex bilinear;
};

F2Terms f2_2d_terms(const MomentSet2D& moments, const ScatteringConfig2D& config, double theta,
                    const QuadratureSpec& spec = {},
                    const std::vector<double>& momentum_kinks = {});

/// w0~(k s(theta, phi)) w0~(k s(phi, theta0)), the integrand of the bilinear term.
Complex f2_phi_integrand(const MomentSet2D& moments, const ScatteringConfig2D& config,
                         double theta, double phi);

Complex f2_2d(const MomentSet2D& moments, const ScatteringConfig2D& config, double theta,
              const QuadratureSpec& spec = {}, const std::vector<double>& momentum_kinks = {});
Complex f2_2d(const Profile2D& profile, const ScatteringConfig2D& config, double theta,
              const QuadratureSpec& spec = {});

AmplitudeResult2D amplitude_2d(const MomentSet2D& moments, const ScatteringConfig2D& config,
                               double theta, int order, const QuadratureSpec& spec = {},
                               const std::vector<double>& momentum_kinks = {});
AmplitudeResult2D amplitude_2d(const Profile2D& profile, const ScatteringConfig2D& config,
                               double theta, int order, const QuadratureSpec& spec = {});

double cross_section_2d(const Profile2D& profile, const ScatteringConfig2D& config,
                        double theta, int order, const QuadratureSpec& spec = {});

}  // namespace lfs
