#pragma once

// One-dimensional transfer matrices from the rescaled Dyson series in
// x_c = x / ell, with an adaptive-stepping solver of the same evolution
// equation for production use.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfs/numerics.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

struct Profile1D {
  std::string descriptor;
  /// w(x_c; k) for x_c in [0, 1]; must be bounded.
  std::function<Complex(double, double)> eval;
  /// Interior discontinuities in x_c.
  std::vector<double> breakpoints;

  /// w with the zero convention outside [0, 1].
  Complex value(double xc, double k) const;
};

/// k-independent profile w(x_c) = X(x_c).
Profile1D profile_1d(const XFactor& x);
Profile1D constant_profile_1d(Complex z);
/// {"type": "zero"} or an x-factor object ({"kind": ...}).
Profile1D profile_1d_from_json(const nlohmann::json& j);

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Maps the plane-wave coefficients (A+, A-) left of the slab to (B+, B-) on
/// its right.
struct TransferMatrix1D {
  Complex m11{1.0, 0.0};
  Complex m12{};
  Complex m21{};
  Complex m22{1.0, 0.0};

  Complex det() const noexcept { return m11 * m22 - m12 * m21; }
  double frobenius_norm() const noexcept;
};

TransferMatrix1D operator+(const TransferMatrix1D& a, const TransferMatrix1D& b);
TransferMatrix1D operator-(const TransferMatrix1D& a, const TransferMatrix1D& b);

/// -(k w / 2) [[1, e^{-2ik ell x_c}], [-e^{2ik ell x_c}, -1]]
Matrix2 h_check(const Profile1D& profile, double xc, double k, double ell);

struct DysonOptions {
  int max_terms = 30;
  /// Stop once the Frobenius norm of the newest term drops below tol.
  double tol = 1e-14;
  double ode_rel_tol = 1e-13;
  double ode_abs_tol = 1e-16;
};

struct DysonSeries {
  TransferMatrix1D matrix;
  /// partial_sums[n] = I + terms 1..n; term_norms[n-1] is the norm of term n.
  std::vector<TransferMatrix1D> partial_sums;
  std::vector<double> term_norms;
  int terms_used = 0;
  bool converged = false;
};

/// Series mode. The n-th ordered-simplex term U_n(1) follows from the chain
/// U_n' = -i ell H U_{n-1}, U_0 = I, integrated jointly for n <= max_terms.
DysonSeries dyson_series_1d(const Profile1D& profile, double k, double ell,
                            const DysonOptions& options = {});

/// Series mode; throws NumericalError (last increment norm attached) when
/// max_terms is reached without convergence.
TransferMatrix1D transfer_matrix_1d(const Profile1D& profile, double k, double ell,
                                    int max_terms = 30, double tol = 1e-14);

/// Direct adaptive integration of U' = -i ell H U.
TransferMatrix1D transfer_matrix_1d_stepping(const Profile1D& profile, double k, double ell,
                                             double rel_tol = 1e-13, double abs_tol = 1e-16);

struct Scattering1D {
  Complex r_left;
  Complex r_right;
  Complex t;
  /// |M22| fell below the threshold (close to a spectral singularity).
  bool near_singular = false;
};

Scattering1D scattering_1d(const TransferMatrix1D& m, double singular_threshold = 1e-8);

}  // namespace lfs
