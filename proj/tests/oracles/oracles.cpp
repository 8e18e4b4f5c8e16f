#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lfs::oracle {
namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

struct M2 {
  cplx a, b, c, d;
};

M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

M2 inv(const M2& x) {
  const cplx det = x.a * x.d - x.b * x.c;
  return {x.d / det, -x.b / det, -x.c / det, x.a / det};
}

// Columns: right- and left-moving waves; rows: field and derivative.
M2 wave_basis(cplx q, double x) {
  const cplx ep = std::exp(I * q * x), em = std::exp(-I * q * x);
  return {ep, em, I * q * ep, -I * q * em};
}

double ex1_g(double p, double alpha, double L) {
  return p < alpha ? 0.0 : 2.0 * pi * L * L * (alpha - p) * std::exp(L * (alpha - p));
}

}  // namespace

Slab1D homogeneous_slab(cplx n, double k, double ell) {
  const M2 m = mul(mul(inv(wave_basis(k, ell)), wave_basis(n * k, ell)),
                   mul(inv(wave_basis(n * k, 0.0)), wave_basis(k, 0.0)));
  return {m.a, m.b, m.c, m.d};
}

double x_function_direct(double s, double s0, double xi) {
  const double lo = s0 + xi, hi = s - xi;
  if (hi <= lo || lo >= 1.0 || hi <= -1.0) return 0.0;
  const double a = std::asin(std::max(lo, -1.0));
  const double b = std::asin(std::min(hi, 1.0));
  auto f = [&](double phi) {
    const double sp = std::sin(phi);
    return (xi - s + sp) * (xi + s0 - sp);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

double gaussian_Y_riemann(double theta, double phi, double theta0, double phi0, double kk,
                          int n) {
  auto h = [](double t, double p, double t0) {
    return std::sin(t0) * std::sin(t) * std::cos(p) + 0.25 * (std::cos(2 * t) + std::cos(2 * t0)) -
           0.5;
  };
  const double da = 0.5 * pi / n, db = 2.0 * pi / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = (i + 0.5) * da;
    for (int j = 0; j < n; ++j) {
      const double b = (j + 0.5) * db;
      sum += std::sin(a) * std::exp(kk * kk * (h(theta, phi - b, a) + h(a, b - phi0, theta0)));
    }
  }
  return sum * da * db / (2.0 * pi);
}

double ex1_square_transform_convolution(double q, double alpha, double L) {
  if (q <= 2.0 * alpha) return 0.0;
  auto f = [&](double p) { return ex1_g(p, alpha, L) * ex1_g(q - p, alpha, L); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, alpha, q - alpha, 15,
                                                                       1e-14) /
         (2.0 * pi);
}

cplx f2_gaussian_riemann(cplx z0, double L, double k, double theta, double theta0, long n) {
  auto w0 = [&](double p) { return z0 * std::sqrt(2.0 * pi) * L * std::exp(-0.5 * L * L * p * p); };
  const double s = std::sin(theta) - std::sin(theta0);
  const double c = std::cos(theta) - std::cos(theta0);
  const double dphi = pi / static_cast<double>(n);
  cplx sum = 0.0;
  for (long i = 0; i < n; ++i) {
    const double phi = -0.5 * pi + (static_cast<double>(i) + 0.5) * dphi;
    sum += w0(k * (std::sin(theta) - std::sin(phi))) * w0(k * (std::sin(phi) - std::sin(theta0)));
  }
  sum *= dphi;
  const cplx w1 = 0.5 * w0(k * s);
  return I * k / (2.0 * std::sqrt(2.0 * pi)) * (-c * w1 + k / (4.0 * pi) * sum);
}

cplx ex1_third_coefficient(cplx z, double alpha, double L, double k, double theta,
                           double theta0) {
  const double s = std::sin(theta) - std::sin(theta0);
  const double c = std::cos(theta) - std::cos(theta0);
  const cplx w2 = z * ex1_g(k * s, alpha, L) / 3.0;
  return -k * c * c * w2 / (4.0 * std::sqrt(2.0 * pi));
}

}  // namespace lfs::oracle
