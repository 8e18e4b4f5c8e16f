#include "lfs/amp2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfs/error.hpp"

namespace lfs {
namespace {

constexpr double kAngleGuard = 1e-12;

void check_moments(const MomentSet2D& moments, const ScatteringConfig2D& config) {
  if (std::abs(moments.k() - config.k) > 1e-14 * config.k) {
    throw ValidationError("moment set was prepared for a different k");
  }
}

double prefactor(double k) { return k / (2.0 * std::sqrt(2.0 * kPi)); }

// Angles phi in (-pi/2, pi/2) where one of the two transform arguments
// crosses a registered kink.
std::vector<double> phi_breakpoints(const ScatteringConfig2D& config, double theta,
                                    const std::vector<double>& kinks) {
  std::vector<double> out;
  const double st = std::sin(theta);
  const double s0 = std::sin(config.theta0);
  for (double p : kinks) {
    for (double s : {st - p / config.k, s0 + p / config.k}) {
      if (s > -1.0 && s < 1.0) out.push_back(std::asin(s));
    }
  }
  return out;
}

}  // namespace

void ScatteringConfig2D::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("k must be finite and > 0");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ValidationError("ell must be finite and > 0");
  if (!std::isfinite(theta0)) throw ValidationError("theta0 must be finite");
  if (std::abs(std::cos(theta0)) < kAngleGuard) {
    throw ValidationError("theta0 must satisfy cos(theta0) != 0");
  }
}

double ScatteringConfig2D::p0() const { return k * std::sin(theta0); }

double ScatteringConfig2D::varpi0() const { return k * std::abs(std::cos(theta0)); }

void validate_detector_angle(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("detector angle must be finite");
  if (std::abs(std::cos(theta)) < kAngleGuard) {
    throw ValidationError("detector angle must satisfy cos(theta) != 0");
  }
}

double s_factor(double theta, double theta0) noexcept {
  return std::sin(theta) - std::sin(theta0);
}

double c_factor(double theta, double theta0) noexcept {
  return std::cos(theta) - std::cos(theta0);
}

MomentSet2D amplitude_moments(const Profile2D& profile, const ScatteringConfig2D& config,
                              const MomentOptions& options) {
  config.validate();
  return MomentSet2D(profile, config.k, {0, 1}, options);
}

Complex f1_2d(const MomentSet2D& moments, const ScatteringConfig2D& config, double theta) {
  config.validate();
  validate_detector_angle(theta);
  check_moments(moments, config);
  return prefactor(config.k) * moments(0, config.k * s_factor(theta, config.theta0));
}

Complex f1_2d(const Profile2D& profile, const ScatteringConfig2D& config, double theta) {
  return f1_2d(amplitude_moments(profile, config), config, theta);
}

Complex f2_phi_integrand(const MomentSet2D& moments, const ScatteringConfig2D& config,
                         double theta, double phi) {
  const double k = config.k;
  return moments(0, k * s_factor(theta, phi)) * moments(0, k * s_factor(phi, config.theta0));
}

F2Terms f2_2d_terms(const MomentSet2D& moments, const ScatteringConfig2D& config, double theta,
                    const QuadratureSpec& spec, const std::vector<double>& momentum_kinks) {
  config.validate();
  validate_detector_angle(theta);
  check_moments(moments, config);
  const double k = config.k;
  const Complex pre = kI * prefactor(k);
  F2Terms t;
  t.linear = -pre * c_factor(theta, config.theta0) *
             moments(1, k * s_factor(theta, config.theta0));
  const std::vector<double> cuts = phi_breakpoints(config, theta, momentum_kinks);
  const Complex integral = integrate_1d(
      [&](double phi) { return f2_phi_integrand(moments, config, theta, phi); }, -kPi / 2.0,
      kPi / 2.0, spec, cuts);
  t.bilinear = pre * k / (4.0 * kPi) * integral;
  return t;
}

Complex f2_2d(const MomentSet2D& moments, const ScatteringConfig2D& config, double theta,
              const QuadratureSpec& spec, const std::vector<double>& momentum_kinks) {
  const F2Terms t = f2_2d_terms(moments, config, theta, spec, momentum_kinks);
  return t.linear + t.bilinear;
}

Complex f2_2d(const Profile2D& profile, const ScatteringConfig2D& config, double theta,
              const QuadratureSpec& spec) {
  return f2_2d(amplitude_moments(profile, config), config, theta, spec, profile.momentum_kinks);
}

AmplitudeResult2D amplitude_2d(const MomentSet2D& moments, const ScatteringConfig2D& config,
                               double theta, int order, const QuadratureSpec& spec,
                               const std::vector<double>& momentum_kinks) {
  if (order != 1 && order != 2) throw ValidationError("amplitude order must be 1 or 2");
  AmplitudeResult2D r;
  r.order = order;
  r.f1 = f1_2d(moments, config, theta);
  r.f2 = f2_2d(moments, config, theta, spec, momentum_kinks);
  const double kl = config.kl();
  r.truncated = r.f1 * kl;
  if (order == 2) r.truncated += r.f2 * (kl * kl);
  return r;
}

AmplitudeResult2D amplitude_2d(const Profile2D& profile, const ScatteringConfig2D& config,
                               double theta, int order, const QuadratureSpec& spec) {
  return amplitude_2d(amplitude_moments(profile, config), config, theta, order, spec,
                      profile.momentum_kinks);
}

double cross_section_2d(const Profile2D& profile, const ScatteringConfig2D& config,
                        double theta, int order, const QuadratureSpec& spec) {
  return std::norm(amplitude_2d(profile, config, theta, order, spec).truncated);
}

}  // namespace lfs
