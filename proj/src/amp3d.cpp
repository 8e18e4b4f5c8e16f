#include "lfs/amp3d.hpp"

#include <cmath>

#include "lfs/error.hpp"

namespace lfs {
namespace {

constexpr double kAngleGuard = 1e-12;

double prefactor(double k) { return k / (2.0 * std::sqrt(2.0 * kPi)); }

void check_order(int order) {
  if (order != 1 && order != 2) throw ValidationError("amplitude order must be 1 or 2");
}

AmplitudeResult3D assemble(Complex f1, Complex f2, double kl, int order) {
  AmplitudeResult3D r;
  r.order = order;
  r.f1 = f1;
  r.f2 = f2;
  r.truncated = f1 * kl;
  if (order == 2) r.truncated += f2 * (kl * kl);
  return r;
}

}  // namespace

void ScatteringConfig3D::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("k must be finite and > 0");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ValidationError("ell must be finite and > 0");
  if (!std::isfinite(theta0) || !std::isfinite(phi0)) {
    throw ValidationError("incidence angles must be finite");
  }
  if (std::abs(std::cos(theta0)) < kAngleGuard) {
    throw ValidationError("theta0 must satisfy cos(theta0) != 0");
  }
}

void Direction3D::validate() const {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw ValidationError("detector angles must be finite");
  }
  if (std::abs(std::cos(theta)) < kAngleGuard) {
    throw ValidationError("detector angle must satisfy cos(theta) != 0");
  }
}

std::pair<double, double> g_vector(double theta, double phi, double alpha, double beta) noexcept {
  const double st = std::sin(theta);
  const double sa = std::sin(alpha);
  return {st * std::cos(phi) - sa * std::cos(beta), st * std::sin(phi) - sa * std::sin(beta)};
}

MomentSet3D amplitude_moments_3d(const Profile3D& profile, const ScatteringConfig3D& config,
                                 const MomentOptions& options) {
  config.validate();
  return MomentSet3D(profile, config.k, {0, 1}, options);
}

Complex f1_3d(const MomentSet3D& moments, const ScatteringConfig3D& config,
              const Direction3D& dir) {
  config.validate();
  dir.validate();
  const auto [gx, gy] = g_vector(dir.theta, dir.phi, config.theta0, config.phi0);
  return prefactor(config.k) * moments(0, config.k * gx, config.k * gy);
}

Complex f1_3d(const Profile3D& profile, const ScatteringConfig3D& config, const Direction3D& dir) {
  return f1_3d(amplitude_moments_3d(profile, config), config, dir);
}

Complex f2_3d(const MomentSet3D& moments, const ScatteringConfig3D& config,
              const Direction3D& dir, const QuadratureSpec& spec) {
  config.validate();
  dir.validate();
  const double k = config.k;
  const auto [gx, gy] = g_vector(dir.theta, dir.phi, config.theta0, config.phi0);
  const Complex linear =
      (std::cos(config.theta0) - std::cos(dir.theta)) * moments(1, k * gx, k * gy);
  const Complex integral = integrate_2d(
      [&](double a, double b) {
        const auto [ux, uy] = g_vector(dir.theta, dir.phi, a, b);
        const auto [vx, vy] = g_vector(a, b, config.theta0, config.phi0);
        return std::sin(a) * moments(0, k * ux, k * uy) * moments(0, k * vx, k * vy);
      },
      0.0, kPi / 2.0, 0.0, 2.0 * kPi, spec);
  return kI * prefactor(k) * (linear + k * k / (8.0 * kPi * kPi) * integral);
}

Complex f2_3d(const Profile3D& profile, const ScatteringConfig3D& config, const Direction3D& dir,
              const QuadratureSpec& spec) {
  return f2_3d(amplitude_moments_3d(profile, config), config, dir, spec);
}

AmplitudeResult3D amplitude_3d(const MomentSet3D& moments, const ScatteringConfig3D& config,
                               const Direction3D& dir, int order, const QuadratureSpec& spec) {
  check_order(order);
  return assemble(f1_3d(moments, config, dir), f2_3d(moments, config, dir, spec), config.kl(),
                  order);
}

AmplitudeResult3D amplitude_3d(const Profile3D& profile, const ScatteringConfig3D& config,
                               const Direction3D& dir, int order, const QuadratureSpec& spec) {
  return amplitude_3d(amplitude_moments_3d(profile, config), config, dir, order, spec);
}

double gaussian_h(double theta, double phi, double theta0) noexcept {
  return std::sin(theta0) * std::sin(theta) * std::cos(phi) +
         0.25 * (std::cos(2.0 * theta) + std::cos(2.0 * theta0)) - 0.5;
}

double gaussian_Y(double theta, double phi, double theta0, double phi0, double kk,
                  const QuadratureSpec& spec) {
  if (!(kk >= 0.0)) throw ValidationError("gaussian_Y: K must be >= 0");
  const double k2 = kk * kk;
  const Complex v = integrate_2d(
      [&](double a, double b) {
        return Complex(std::sin(a) * std::exp(k2 * (gaussian_h(theta, phi - b, a) +
                                                    gaussian_h(a, b - phi0, theta0))));
      },
      0.0, kPi / 2.0, 0.0, 2.0 * kPi, spec);
  return v.real() / (2.0 * kPi);
}

Complex gaussian_f1_3d(Complex z, double L, const ScatteringConfig3D& config,
                       const Direction3D& dir) {
  config.validate();
  dir.validate();
  const double kk = config.k * L;
  return std::sqrt(kPi / 2.0) * z * kk * kk / config.k *
         std::exp(kk * kk * gaussian_h(dir.theta, dir.phi - config.phi0, config.theta0));
}

Complex gaussian_f2_3d(Complex z, double L, const ScatteringConfig3D& config,
                       const Direction3D& dir, const QuadratureSpec& spec) {
  config.validate();
  dir.validate();
  const double kk = config.k * L;
  const double e = std::exp(kk * kk * gaussian_h(dir.theta, dir.phi - config.phi0, config.theta0));
  const double y = gaussian_Y(dir.theta, dir.phi, config.theta0, config.phi0, kk, spec);
  return std::sqrt(kPi / 2.0) * kI * z * kk * kk / (2.0 * config.k) *
         ((std::cos(config.theta0) - std::cos(dir.theta)) * e + z * kk * kk * y);
}

AmplitudeResult3D gaussian_amplitude_3d(Complex z, double L, const ScatteringConfig3D& config,
                                        const Direction3D& dir, int order,
                                        const QuadratureSpec& spec) {
  check_order(order);
  return assemble(gaussian_f1_3d(z, L, config, dir), gaussian_f2_3d(z, L, config, dir, spec),
                  config.kl(), order);
}

double normalized_cross_section(const MomentSet3D& moments, const ScatteringConfig3D& config,
                                const Direction3D& dir, int order, const QuadratureSpec& spec) {
  const double forward =
      std::norm(amplitude_3d(moments, config, Direction3D{0.0, 0.0}, order, spec).truncated);
  if (!(forward > 0.0)) {
    throw NumericalError("normalized cross section: forward amplitude vanishes");
  }
  return std::norm(amplitude_3d(moments, config, dir, order, spec).truncated) / forward;
}

double normalized_cross_section(const Profile3D& profile, const ScatteringConfig3D& config,
                                const Direction3D& dir, int order, const QuadratureSpec& spec) {
  return normalized_cross_section(amplitude_moments_3d(profile, config), config, dir, order, spec);
}

}  // namespace lfs
