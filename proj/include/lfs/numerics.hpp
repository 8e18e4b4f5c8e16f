#pragma once

// Numerical substrate: step/sinc helpers, adaptive Gauss-Kronrod quadrature
// and truncated-trapezoid Fourier transforms evaluated at arbitrary
// (off-grid) momenta.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace lfs {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 500;

  void validate() const;
};

enum class TransformScheme { analytic, numeric };

struct TransformSpec {
  double truncation_radius = 1.0;
  std::size_t sample_count = 1024;  // number of trapezoid intervals, power of two
  TransformScheme scheme = TransformScheme::numeric;
  // |f| at the truncation edge must not exceed edge_tolerance * max|f|.
  double edge_tolerance = 1e-6;
  // Floor for the peak in the edge test, for functions that cancel to
  // roundoff against a known larger scale.
  double edge_scale = 0.0;

  void validate() const;
};

/// Theta(x): 1 for x >= 0 (so Theta(0) == 1), 0 otherwise.
double heaviside(double x) noexcept;

/// sin(x)/x with sinc(0) == 1; a Taylor branch is used for |x| < 1e-2.
double sinc(double x) noexcept;

/// (-1)^j x^(2j+1) / (2j+1)! * Theta(x). Throws NumericalError if the value
/// overflows.
double sj(int j, double x);

using Integrand1D = std::function<Complex(double)>;
using Integrand2D = std::function<Complex(double, double)>;

struct QuadratureResult {
  Complex value;
  double error = 0.0;
  int segments = 0;
};

/// Globally adaptive G7/K15 quadrature. Converged when the summed error
/// estimate is below max(abs_tol, rel_tol * |result|). Interior breakpoints
/// (discontinuities, kinks) start the subdivision. Throws NumericalError with
/// the best estimate attached when max_subdivisions is exhausted.
QuadratureResult integrate_1d_detailed(const Integrand1D& f, double a, double b,
                                       const QuadratureSpec& spec = {},
                                       std::span<const double> breakpoints = {});

Complex integrate_1d(const Integrand1D& f, double a, double b,
                     const QuadratureSpec& spec = {},
                     std::span<const double> breakpoints = {});

/// Iterated quadrature over [a,b] x [c,d]; f(u, v) with u the outer variable.
/// The inner integrals get a tenth of the outer tolerance.
Complex integrate_2d(const Integrand2D& f, double a, double b, double c, double d,
                     const QuadratureSpec& spec = {});

/// Uniform trapezoid samples of a function on [-R, R], ready for repeated
/// Fourier evaluation  F(p) = int e^{-i p y} f(y) dy  at arbitrary p.
class FourierSampler1D {
 public:
  FourierSampler1D(const Integrand1D& f, const TransformSpec& spec);

  /// Results are memoized per momentum; angle sweeps revisit the same
  /// quadrature nodes many times.
  Complex transform(double p) const;

  double radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return re_.size(); }

 private:
  struct Memo;

  std::vector<double> re_;
  std::vector<double> im_;
  double radius_;
  double step_;
  std::shared_ptr<Memo> memo_;
};

/// Two-dimensional analogue over the square [-R, R]^2:
/// F(px, py) = int e^{-i (px x + py y)} f(x, y) dx dy.
class FourierSampler2D {
 public:
  FourierSampler2D(const Integrand2D& f, const TransformSpec& spec);

  Complex transform(double px, double py) const;

 private:
  std::size_t n_;  // points per axis
  std::vector<double> re_;
  std::vector<double> im_;
  double radius_;
  double step_;
};

Complex fourier_1d(const Integrand1D& f, double p, const TransformSpec& spec);

Complex fourier_2d(const Integrand2D& f, double px, double py,
                   const TransformSpec& spec);

}  // namespace lfs
