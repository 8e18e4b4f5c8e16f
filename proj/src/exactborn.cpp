#include "lfs/exactborn.hpp"

#include <algorithm>
#include <cmath>

#include "lfs/error.hpp"

namespace lfs {
namespace {

Complex transform_at(const Profile2D& profile, double xc, double p, double k) {
  if (profile.analytic_transform) return profile.analytic_transform(xc, p, k);
  TransformSpec s = profile.transform;
  s.scheme = TransformScheme::numeric;
  return fourier_1d([&](double y) { return profile.value(xc, y, k); }, p, s);
}

void require_born_range(double k, double alpha) {
  if (k > alpha) {
    throw DomainError("the exact Born amplitude holds only for k <= alpha");
  }
}

// (1 - e^{-iu}) / (iu), with its Taylor series near u = 0.
Complex phase_bracket(double u) {
  if (std::abs(u) < 1e-4) {
    const Complex z(0.0, -u);
    return 1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0 * (1.0 + z / 5.0)));
  }
  return (1.0 - std::exp(Complex(0.0, -u))) / Complex(0.0, u);
}

}  // namespace

void Ex1Params::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("ex1: alpha must be > 0");
  if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("ex1: L must be > 0");
}

Profile2D ex1_profile(const Ex1Params& params) {
  params.validate();
  return ex1_profile(params.z, params.alpha, params.L);
}

bool is_born_exact(const Profile2D& profile, double alpha, double k,
                   const SupportCheckSpec& spec) {
  if (spec.x_samples < 1 || spec.p_samples < 2) {
    throw ValidationError("support check needs at least one x sample and two p samples");
  }
  const double span = spec.span > 0.0 ? spec.span : 2.0 * alpha + 10.0 / profile.decay_radius;
  double scale = 0.0;
  double below = 0.0;
  for (std::size_t i = 0; i < spec.x_samples; ++i) {
    const double xc = (static_cast<double>(i) + 0.5) / static_cast<double>(spec.x_samples);
    for (std::size_t j = 0; j < spec.p_samples; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(spec.p_samples - 1);
      below = std::max(below, std::abs(transform_at(profile, xc, alpha - span * t, k)));
      scale = std::max(scale, std::abs(transform_at(profile, xc, alpha + span * t, k)));
    }
  }
  scale = std::max(scale, below);
  if (scale == 0.0) return true;
  return below <= spec.tolerance * scale;
}

BornExactProfile::BornExactProfile(Profile2D base, double alpha, double k,
                                   const SupportCheckSpec& spec)
    : base_(std::move(base)), alpha_(alpha) {
  if (!(alpha > 0.0)) throw ValidationError("Born-exact alpha must be > 0");
  if (!is_born_exact(base_, alpha, k, spec)) {
    throw ValidationError("profile transform does not vanish for p <= alpha");
  }
}

Complex ttv(const Profile2D& profile, double ell, double px, double py, double k,
            const QuadratureSpec& spec) {
  if (!(ell > 0.0)) throw ValidationError("ttv: ell must be > 0");
  const std::vector<double> cuts = profile.breakpoints_at(0.0);
  const Complex integral = integrate_1d(
      [&](double xc) {
        return std::exp(Complex(0.0, -ell * px * xc)) * transform_at(profile, xc, py, k);
      },
      0.0, 1.0, spec, cuts);
  return -k * k * ell * integral;
}

Complex exact_amplitude(const BornExactProfile& profile, const ScatteringConfig2D& config,
                        double theta, const QuadratureSpec& spec) {
  config.validate();
  validate_detector_angle(theta);
  require_born_range(config.k, profile.alpha());
  const double k = config.k;
  const Complex v = ttv(profile.base(), config.ell, k * c_factor(theta, config.theta0),
                        k * s_factor(theta, config.theta0), k, spec);
  return -v / (2.0 * std::sqrt(2.0 * kPi));
}

Complex ex1_f1(const Ex1Params& params, const ScatteringConfig2D& config, double theta) {
  params.validate();
  config.validate();
  validate_detector_angle(theta);
  const double s = s_factor(theta, config.theta0);
  const double xi = params.alpha / config.k;
  if (heaviside(s - xi) == 0.0) return {};
  const double kk = config.k * params.L;
  return -std::sqrt(kPi / 2.0) * params.z * kk * kk * (s - xi) * std::exp(kk * (xi - s));
}

Complex ex1_f2(const Ex1Params& params, const ScatteringConfig2D& config, double theta) {
  const Complex f1 = ex1_f1(params, config, theta);
  const double xi = params.alpha / config.k;
  const double s = s_factor(theta, config.theta0);
  const double chi = x_function(std::sin(theta), std::sin(config.theta0), xi);
  Complex second{};
  if (chi != 0.0) {
    const double kk = config.k * params.L;
    second = std::sqrt(kPi / 2.0) * params.z * params.z * std::pow(kk, 4) *
             std::exp(kk * (2.0 * xi - s)) * chi;
  }
  return 0.5 * kI * (-c_factor(theta, config.theta0) * f1 + second);
}

Complex ex1_exact(const Ex1Params& params, const ScatteringConfig2D& config, double theta) {
  params.validate();
  config.validate();
  require_born_range(config.k, params.alpha);
  const Complex f1 = ex1_f1(params, config, theta);
  if (f1 == Complex{}) return {};
  // i (e^{-i kl c} - 1) / c = kl (1 - e^{-iu}) / (iu), u = kl c.
  const double kl = config.kl();
  return kl * phase_bracket(kl * c_factor(theta, config.theta0)) * f1;
}

double x_function(double varsigma, double varsigma0, double xi) {
  const double gate = heaviside(varsigma - varsigma0 - 2.0 * xi) *
                      heaviside(varsigma - xi + 1.0) * heaviside(1.0 - xi - varsigma0);
  if (gate == 0.0) return 0.0;
  const double a = std::clamp(varsigma - xi, -1.0, 1.0);
  const double b = std::clamp(varsigma0 + xi, -1.0, 1.0);
  const double ra = std::sqrt(std::max(0.0, 1.0 - a * a));
  const double rb = std::sqrt(std::max(0.0, 1.0 - b * b));
  const double body = (2.0 * (xi - varsigma) * (xi + varsigma0) - 1.0) * (std::asin(a) - std::asin(b)) +
                      2.0 * (varsigma + varsigma0) * (rb - ra) + a * ra - b * rb;
  return 0.5 * body;
}

}  // namespace lfs
