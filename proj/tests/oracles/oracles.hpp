#pragma once

// Reference values computed independently of the library's own quadrature,
// transform and series code: closed forms, Boost quadrature and plain
// Riemann sums.

#include <complex>

namespace lfs::oracle {

using cplx = std::complex<double>;

struct Slab1D {
  cplx m11, m12, m21, m22;
};

/// Transfer matrix of a homogeneous slab of index n on [0, ell] from plane-wave
/// matching at both faces.
Slab1D homogeneous_slab(cplx n, double k, double ell);

/// The phi integral behind the ex1 bilinear term,
/// int dphi (xi - s + sin phi)(xi + s0 - sin phi) over s0 + xi <= sin phi <= s - xi.
double x_function_direct(double s, double s0, double xi);

/// Midpoint rule on an n x n grid for the 3D Gaussian double integral.
double gaussian_Y_riemann(double theta, double phi, double theta0, double phi0, double kk,
                          int n = 2000);

/// (1/2pi) int g~(p) g~(q - p) dp for the ex1 envelope transform.
double ex1_square_transform_convolution(double q, double alpha, double L);

/// f2 of the slab w = z0 exp(-y^2/2L^2) from a midpoint sum over phi.
cplx f2_gaussian_riemann(cplx z0, double L, double k, double theta, double theta0,
                         long n = 1000000);

/// Third-order coefficient of the exact amplitude of ex1 (k <= alpha),
/// -k c^2 w2 / (4 sqrt(2 pi)) with w2 the l = 2 moment.
cplx ex1_third_coefficient(cplx z, double alpha, double L, double k, double theta,
                           double theta0);

}  // namespace lfs::oracle
