#include <algorithm>
#include <cmath>
#include <string>

#include "lfs/error.hpp"
#include "lfs/profiles.hpp"

namespace lfs {
namespace {

void check_index_2d(int l) {
  if (l < 0 || l > kQSimplex) {
    throw ValidationError("moment index must be 0, 1, 2 or the simplex index, got " +
                          std::to_string(l));
  }
}

double xpow(double x, int l) {
  switch (l) {
    case 0:
      return 1.0;
    case 1:
      return x;
    default:
      return x * x;
  }
}

TransformSpec sampling_for(const TransformSpec& own, const MomentOptions& options) {
  TransformSpec s = options.transform ? *options.transform : own;
  s.scheme = TransformScheme::numeric;
  return s;
}

// max|w| on a coarse (x_c, y) grid over the sampling window.
double coarse_peak(const Profile2D& profile, double k, double radius) {
  double peak = 0.0;
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j <= 32; ++j) {
      const double y = radius * (j / 16.0 - 1.0);
      peak = std::max(peak, std::abs(profile.value(i / 16.0, y, k)));
    }
  }
  return peak;
}

// Ordered-simplex pair moment at fixed y, with x1 = t x2 so the integrand is
// smooth on the unit square.
Complex spatial_q_simplex(const Profile2D& profile, double y, double k,
                          const QuadratureSpec& spec) {
  return integrate_2d(
      [&](double x2, double t) {
        return x2 * x2 * (1.0 - t) * profile.value(t * x2, y, k) * profile.value(x2, y, k);
      },
      0.0, 1.0, 0.0, 1.0, spec);
}

}  // namespace

Complex Profile2D::value(double xc, double y, double k) const {
  if (xc < 0.0 || xc > 1.0 || !eval) return {};
  return eval(xc, y, k);
}

std::vector<double> Profile2D::breakpoints_at(double y) const {
  if (!x_breakpoints) return {};
  return x_breakpoints(y);
}

Complex Profile3D::value(double rx, double ry, double zc, double k) const {
  if (zc < 0.0 || zc > 1.0 || !eval) return {};
  return eval(rx, ry, zc, k);
}

Complex spatial_moment_y(const Profile2D& profile, int l, double y, double k,
                         const QuadratureSpec& spec) {
  if (l < 0 || l > 2) throw ValidationError("spatial_moment_y: l must be 0, 1 or 2");
  const std::vector<double> cuts = profile.breakpoints_at(y);
  return integrate_1d([&](double x) { return xpow(x, l) * profile.value(x, y, k); }, 0.0, 1.0,
                      spec, cuts);
}

MomentSet2D::MomentSet2D(const Profile2D& profile, double k, std::vector<int> indices,
                         const MomentOptions& options)
    : profile_(&profile),
      k_(k),
      analytic_(options.scheme == TransformScheme::analytic && profile.has_analytic_moments()),
      quad_(options.quadrature) {
  for (int l : indices) {
    check_index_2d(l);
    requested_[static_cast<std::size_t>(l)] = true;
  }
  TransformSpec sampling = sampling_for(profile.transform, options);
  std::optional<double> peak;
  for (int l : indices) {
    const auto slot = static_cast<std::size_t>(l);
    if (numeric_[slot]) continue;
    const bool needs_numeric = l == kQSimplex || !analytic_;
    if (needs_numeric && !peak) peak = coarse_peak(profile, k, sampling.truncation_radius);
    if (l == kQSimplex) {
      sampling.edge_scale = *peak * *peak;
      const bool analytic_q =
          options.scheme == TransformScheme::analytic &&
          (profile.analytic_q_simplex || profile.analytic_product_transform);
      if (analytic_q) continue;
      numeric_[slot].emplace(
          [&](double y) { return spatial_q_simplex(profile, y, k, quad_); }, sampling);
    } else if (!analytic_) {
      sampling.edge_scale = *peak;
      numeric_[slot].emplace(
          [&](double y) { return spatial_moment_y(profile, l, y, k, quad_); }, sampling);
    }
  }
}

Complex MomentSet2D::operator()(int l, double p) const {
  check_index_2d(l);
  const auto slot = static_cast<std::size_t>(l);
  if (!requested_[slot]) {
    throw ValidationError("moment index " + std::to_string(l) + " was not prepared");
  }
  if (numeric_[slot]) return numeric_[slot]->transform(p);
  const Profile2D& w = *profile_;
  if (l == kQSimplex) {
    if (w.analytic_q_simplex) return w.analytic_q_simplex(p, k_);
    return integrate_2d(
        [&](double x2, double t) {
          return x2 * x2 * (1.0 - t) * w.analytic_product_transform(t * x2, x2, p, k_);
        },
        0.0, 1.0, 0.0, 1.0, quad_);
  }
  if (w.analytic_moment) return w.analytic_moment(l, p, k_);
  const std::vector<double> cuts = w.breakpoints_at(0.0);
  return integrate_1d([&](double x) { return xpow(x, l) * w.analytic_transform(x, p, k_); },
                      0.0, 1.0, quad_, cuts);
}

Complex moment_2d(const Profile2D& profile, int l, double p, double k,
                  const MomentOptions& options) {
  return MomentSet2D(profile, k, {l}, options)(l, p);
}

Complex product_transform(const Profile2D& profile, double x1, double x2, double q, double k,
                          const MomentOptions& options) {
  if (options.scheme == TransformScheme::analytic && profile.analytic_product_transform) {
    return profile.analytic_product_transform(x1, x2, q, k);
  }
  const TransformSpec sampling = sampling_for(profile.transform, options);
  return fourier_1d(
      [&](double y) { return profile.value(x1, y, k) * profile.value(x2, y, k); }, q, sampling);
}

MomentSet3D::MomentSet3D(const Profile3D& profile, double k, std::vector<int> indices,
                         const MomentOptions& options)
    : profile_(&profile),
      k_(k),
      analytic_(options.scheme == TransformScheme::analytic && profile.has_analytic_moments()),
      quad_(options.quadrature) {
  for (int l : indices) {
    if (l < 0 || l > 1) throw ValidationError("3D moment index must be 0 or 1");
    requested_[static_cast<std::size_t>(l)] = true;
  }
  if (analytic_) return;
  const TransformSpec sampling = sampling_for(profile.transform, options);
  for (int l : indices) {
    const auto slot = static_cast<std::size_t>(l);
    if (numeric_[slot]) continue;
    numeric_[slot].emplace(
        [&](double rx, double ry) {
          return integrate_1d(
              [&](double z) { return xpow(z, l) * profile.value(rx, ry, z, k); }, 0.0, 1.0,
              quad_, profile.z_breakpoints);
        },
        sampling);
  }
}

Complex MomentSet3D::operator()(int l, double px, double py) const {
  if (l < 0 || l > 1) throw ValidationError("3D moment index must be 0 or 1");
  const auto slot = static_cast<std::size_t>(l);
  if (!requested_[slot]) {
    throw ValidationError("moment index " + std::to_string(l) + " was not prepared");
  }
  if (numeric_[slot]) return numeric_[slot]->transform(px, py);
  const Profile3D& w = *profile_;
  if (w.analytic_moment) return w.analytic_moment(l, px, py, k_);
  return integrate_1d([&](double z) { return xpow(z, l) * w.analytic_transform(px, py, z, k_); },
                      0.0, 1.0, quad_, w.z_breakpoints);
}

Complex moment_3d(const Profile3D& profile, int l, double px, double py, double k,
                  const MomentOptions& options) {
  return MomentSet3D(profile, k, {l}, options)(l, px, py);
}

}  // namespace lfs
