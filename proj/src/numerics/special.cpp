#include <cmath>
#include <string>

#include "lfs/error.hpp"
#include "lfs/numerics.hpp"

namespace lfs {

double heaviside(double x) noexcept { return x >= 0.0 ? 1.0 : 0.0; }

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return std::sin(x) / x;
}

double sj(int j, double x) {
  if (j < 0) throw ValidationError("sj: order must be nonnegative");
  if (x < 0.0) return 0.0;
  double term = x;
  for (int i = 1; i <= j; ++i) {
    term *= -x * x / (static_cast<double>(2 * i) * static_cast<double>(2 * i + 1));
  }
  if (!std::isfinite(term)) {
    throw NumericalError("sj: value out of range for j=" + std::to_string(j));
  }
  return term;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("quadrature rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw ValidationError("quadrature abs_tol must be >= 0");
  if (max_subdivisions < 1) throw ValidationError("quadrature max_subdivisions must be >= 1");
}

void TransformSpec::validate() const {
  if (!(truncation_radius > 0.0) || !std::isfinite(truncation_radius)) {
    throw ValidationError("transform truncation_radius must be finite and > 0");
  }
  if (scheme == TransformScheme::numeric) {
    if (sample_count < 2 || (sample_count & (sample_count - 1)) != 0) {
      throw ValidationError("transform sample_count must be a power of two >= 2");
    }
  }
  if (!(edge_tolerance >= 0.0)) throw ValidationError("transform edge_tolerance must be >= 0");
}

}  // namespace lfs
