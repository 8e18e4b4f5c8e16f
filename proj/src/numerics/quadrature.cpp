#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "lfs/error.hpp"
#include "lfs/numerics.hpp"

namespace lfs {
namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// weights belong to the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a;
  double b;
  Complex value;
  double error;
  double floor;  // roundoff part of error
  bool operator<(const Segment& o) const { return error < o.error; }
};

double roundoff_floor(double resabs) { return 50.0 * kEps * resabs; }

// QUADPACK-style error scaling of one real component.
double scaled_error(double kronrod, double gauss, double resabs, double resasc) {
  double err = std::abs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return std::max(err, roundoff_floor(resabs));
}

Segment gk15(const Integrand1D& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 15> fv;
  fv[7] = f(centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    fv[static_cast<std::size_t>(j)] = f(centre - dx);
    fv[static_cast<std::size_t>(14 - j)] = f(centre + dx);
  }
  Complex kron = kWgk[7] * fv[7];
  Complex gauss = kWg[3] * fv[7];
  double abs_re = kWgk[7] * std::abs(fv[7].real());
  double abs_im = kWgk[7] * std::abs(fv[7].imag());
  for (int j = 0; j < 7; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const Complex pair = fv[ju] + fv[14 - ju];
    kron += kWgk[ju] * pair;
    if (j % 2 == 1) gauss += kWg[ju / 2] * pair;
    abs_re += kWgk[ju] * (std::abs(fv[ju].real()) + std::abs(fv[14 - ju].real()));
    abs_im += kWgk[ju] * (std::abs(fv[ju].imag()) + std::abs(fv[14 - ju].imag()));
  }
  const Complex mean = 0.5 * kron;
  double asc_re = kWgk[7] * std::abs(fv[7].real() - mean.real());
  double asc_im = kWgk[7] * std::abs(fv[7].imag() - mean.imag());
  for (int j = 0; j < 7; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    asc_re += kWgk[ju] * (std::abs(fv[ju].real() - mean.real()) +
                          std::abs(fv[14 - ju].real() - mean.real()));
    asc_im += kWgk[ju] * (std::abs(fv[ju].imag() - mean.imag()) +
                          std::abs(fv[14 - ju].imag() - mean.imag()));
  }
  const double h = std::abs(half);
  const double err_re = scaled_error(kron.real() * h, gauss.real() * h, abs_re * h, asc_re * h);
  const double err_im = scaled_error(kron.imag() * h, gauss.imag() * h, abs_im * h, asc_im * h);
  Segment s{a, b, kron * half, std::hypot(err_re, err_im),
            std::hypot(roundoff_floor(abs_re * h), roundoff_floor(abs_im * h))};
  if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag())) {
    throw NumericalError("integrate_1d: integrand is not finite on the interval");
  }
  return s;
}

}  // namespace

QuadratureResult integrate_1d_detailed(const Integrand1D& f, double a, double b,
                                       const QuadratureSpec& spec,
                                       std::span<const double> breakpoints) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("integrate_1d: interval bounds must be finite");
  }
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::vector<double> cuts{lo};
  for (double c : breakpoints) {
    if (c > lo && c < hi) cuts.push_back(c);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  // Segments too narrow to bisect any further; their error stays in the total.
  std::vector<Segment> frozen;
  Complex total{};
  double total_err = 0.0;
  double total_floor = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = gk15(f, cuts[i], cuts[i + 1]);
    total += s.value;
    total_err += s.error;
    total_floor += s.floor;
    heap.push(s);
  }

  int segments = static_cast<int>(heap.size());
  // An estimate made up entirely of the roundoff floor cannot be reduced by
  // bisection, so it is accepted as well.
  auto converged = [&] {
    return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) ||
           total_err <= (1.0 + 1e-9) * total_floor;
  };
  while (!converged()) {
    if (heap.empty() || segments >= spec.max_subdivisions) {
      throw NumericalError("integrate_1d: no convergence within max_subdivisions",
                           sign * total, total_err);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e3 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_floor += left.floor + right.floor - worst.floor;
    heap.push(left);
    heap.push(right);
    ++segments;
  }

  // Re-sum from the segments to shed the drift of the running updates.
  Complex sum{};
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  for (const Segment& s : frozen) {
    sum += s.value;
    err += s.error;
  }
  return {sign * sum, err, segments};
}

Complex integrate_1d(const Integrand1D& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints) {
  return integrate_1d_detailed(f, a, b, spec, breakpoints).value;
}

Complex integrate_2d(const Integrand2D& f, double a, double b, double c, double d,
                     const QuadratureSpec& spec) {
  spec.validate();
  QuadratureSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;
  const double width = std::abs(b - a);
  inner.abs_tol = width > 0.0 ? 0.1 * spec.abs_tol / width : spec.abs_tol;
  auto outer = [&](double u) {
    return integrate_1d([&](double v) { return f(u, v); }, c, d, inner);
  };
  return integrate_1d(outer, a, b, spec);
}

}  // namespace lfs
