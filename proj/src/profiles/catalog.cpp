#include <algorithm>
#include <cmath>
#include <string>

#include "lfs/error.hpp"
#include "lfs/profiles.hpp"

namespace lfs {
namespace {

std::string fmt_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", z.real(), z.imag());
  return buf;
}

std::string fmt_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

XFactor x_constant(Complex value) {
  XFactor f;
  f.descriptor = "constant " + fmt_complex(value);
  f.eval = [value](double) { return value; };
  f.moments = {value, value / 2.0, value / 3.0};
  f.simplex = value * value / 6.0;
  return f;
}

XFactor x_polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) throw ValidationError("x_polynomial: no coefficients");
  XFactor f;
  f.descriptor = "polynomial of degree " + std::to_string(coeffs.size() - 1);
  for (int l = 0; l < 3; ++l) {
    Complex m{};
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      m += coeffs[n] / static_cast<double>(n + static_cast<std::size_t>(l) + 1);
    }
    f.moments[static_cast<std::size_t>(l)] = m;
  }
  // int_0^x2 (x2 - x1) x1^m dx1 = x2^(m+2) / ((m+1)(m+2))
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      const double d = static_cast<double>((m + 1) * (m + 2) * (m + n + 3));
      f.simplex += coeffs[m] * coeffs[n] / d;
    }
  }
  f.eval = [c = std::move(coeffs)](double x) {
    Complex acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  return f;
}

XFactor x_layers(std::vector<double> edges, std::vector<Complex> values) {
  if (edges.size() < 2 || values.size() + 1 != edges.size()) {
    throw ValidationError("x_layers: need n+1 edges for n values");
  }
  if (edges.front() != 0.0 || edges.back() != 1.0) {
    throw ValidationError("x_layers: edges must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) throw ValidationError("x_layers: edges must increase");
  }
  XFactor f;
  f.descriptor = std::to_string(values.size()) + " layers";
  const std::size_t n = values.size();
  for (int l = 0; l < 3; ++l) {
    Complex m{};
    for (std::size_t i = 0; i < n; ++i) {
      const double a = edges[i];
      const double b = edges[i + 1];
      m += values[i] * (std::pow(b, l + 1) - std::pow(a, l + 1)) / static_cast<double>(l + 1);
    }
    f.moments[static_cast<std::size_t>(l)] = m;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = edges[i + 1] - edges[i];
    const double ci = 0.5 * (edges[i + 1] + edges[i]);
    f.simplex += values[i] * values[i] * hi * hi * hi / 6.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double hj = edges[j + 1] - edges[j];
      const double cj = 0.5 * (edges[j + 1] + edges[j]);
      f.simplex += values[i] * values[j] * hi * hj * (cj - ci);
    }
  }
  f.breakpoints.assign(edges.begin() + 1, edges.end() - 1);
  f.eval = [e = std::move(edges), v = std::move(values)](double x) {
    // Layer i covers (e[i], e[i+1]]; x = 0 belongs to the first layer.
    auto it = std::lower_bound(e.begin() + 1, e.end(), x);
    if (it == e.end()) return Complex{};
    return v[static_cast<std::size_t>(it - e.begin() - 1)];
  };
  return f;
}

YEnvelope y_gaussian(double L) {
  require_positive(L, "gaussian width L");
  YEnvelope g;
  g.descriptor = "gaussian L=" + fmt_real(L);
  g.eval = [L](double y) { return Complex(std::exp(-y * y / (2.0 * L * L))); };
  g.transform = [L](double p) {
    return Complex(std::sqrt(2.0 * kPi) * L * std::exp(-0.5 * L * L * p * p));
  };
  g.square_transform = [L](double q) {
    return Complex(std::sqrt(kPi) * L * std::exp(-0.25 * L * L * q * q));
  };
  g.decay_radius = 12.0 * L;
  g.numeric.truncation_radius = g.decay_radius;
  g.numeric.sample_count = 512;
  return g;
}

YEnvelope y_ex1(double alpha, double L) {
  require_positive(alpha, "ex1 alpha");
  require_positive(L, "ex1 width L");
  YEnvelope g;
  g.descriptor = "ex1 alpha=" + fmt_real(alpha) + " L=" + fmt_real(L);
  g.eval = [alpha, L](double y) {
    const Complex d(y / L, 1.0);
    return std::exp(Complex(0.0, alpha * y)) / (d * d);
  };
  g.transform = [alpha, L](double p) {
    if (p < alpha) return Complex{};
    return Complex(2.0 * kPi * L * L * (alpha - p) * std::exp(L * (alpha - p)));
  };
  g.square_transform = [alpha, L](double q) {
    const double u = q - 2.0 * alpha;
    if (u < 0.0) return Complex{};
    return Complex(kPi / 3.0 * L * L * L * L * u * u * u * std::exp(-L * u));
  };
  g.momentum_kinks = {alpha};
  // |g| ~ (L/y)^2: the tail beyond R shifts the transform by ~ L^2/(R^2 |alpha - p|);
  // the step keeps the first alias p + 2 pi/h far enough above alpha.
  g.decay_radius = 5.0e4 * L;
  g.numeric.truncation_radius = g.decay_radius;
  g.numeric.sample_count = std::size_t{1} << 20;
  return g;
}

Profile2D separable_profile(const XFactor& x, const YEnvelope& y) {
  Profile2D w;
  w.descriptor = "separable [" + x.descriptor + "] x [" + y.descriptor + "]";
  w.eval = [xe = x.eval, ye = y.eval](double xc, double yy, double) { return xe(xc) * ye(yy); };
  w.analytic_transform = [xe = x.eval, yt = y.transform](double xc, double p, double) {
    return xe(xc) * yt(p);
  };
  w.analytic_moment = [m = x.moments, yt = y.transform](int l, double p, double) {
    return m[static_cast<std::size_t>(l)] * yt(p);
  };
  w.analytic_product_transform = [xe = x.eval, ys = y.square_transform](double x1, double x2,
                                                                        double q, double) {
    return xe(x1) * xe(x2) * ys(q);
  };
  w.analytic_q_simplex = [s = x.simplex, ys = y.square_transform](double q, double) {
    return s * ys(q);
  };
  if (!x.breakpoints.empty()) {
    w.x_breakpoints = [b = x.breakpoints](double) { return b; };
  }
  w.momentum_kinks = y.momentum_kinks;
  w.decay_radius = y.decay_radius;
  w.transform = y.numeric;
  return w;
}

Profile2D zero_profile_2d() {
  Profile2D w;
  w.descriptor = "zero";
  w.eval = [](double, double, double) { return Complex{}; };
  w.analytic_transform = [](double, double, double) { return Complex{}; };
  w.analytic_moment = [](int, double, double) { return Complex{}; };
  w.analytic_product_transform = [](double, double, double, double) { return Complex{}; };
  w.analytic_q_simplex = [](double, double) { return Complex{}; };
  w.decay_radius = 1.0;
  w.transform.truncation_radius = 1.0;
  w.transform.sample_count = 64;
  return w;
}

Profile2D ex1_profile(Complex z, double alpha, double L) {
  Profile2D w = separable_profile(x_constant(z), y_ex1(alpha, L));
  w.descriptor = "ex1 z=" + fmt_complex(z) + " alpha=" + fmt_real(alpha) + " L=" + fmt_real(L);
  return w;
}

Profile2D gaussian_y_profile(Complex z0, double L) {
  Profile2D w = separable_profile(x_constant(z0), y_gaussian(L));
  w.descriptor = "gaussian_y z0=" + fmt_complex(z0) + " L=" + fmt_real(L);
  return w;
}

Profile2D sampled_profile(std::size_t nx, std::size_t ny, double y_extent,
                          std::vector<Complex> values) {
  if (nx < 2 || ny < 2) throw ValidationError("sampled profile needs at least 2x2 samples");
  if (values.size() != nx * ny) {
    throw ValidationError("sampled profile: expected " + std::to_string(nx * ny) +
                          " values, got " + std::to_string(values.size()));
  }
  require_positive(y_extent, "sampled profile y_extent");
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("sampled profile contains non-finite values");
    }
  }
  Profile2D w;
  w.descriptor = "sampled " + std::to_string(nx) + "x" + std::to_string(ny);
  const double hx = 1.0 / static_cast<double>(nx - 1);
  const double hy = 2.0 * y_extent / static_cast<double>(ny - 1);
  w.eval = [nx, ny, y_extent, hx, hy, v = std::move(values)](double xc, double y, double) {
    if (y < -y_extent || y > y_extent) return Complex{};
    const double fx = std::min(xc / hx, static_cast<double>(nx - 1));
    const double fy = std::min((y + y_extent) / hy, static_cast<double>(ny - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(fx), nx - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(fy), ny - 2);
    const double tx = fx - static_cast<double>(i);
    const double ty = fy - static_cast<double>(j);
    const Complex a = v[i * ny + j] * (1.0 - ty) + v[i * ny + j + 1] * ty;
    const Complex b = v[(i + 1) * ny + j] * (1.0 - ty) + v[(i + 1) * ny + j + 1] * ty;
    return a * (1.0 - tx) + b * tx;
  };
  std::vector<double> cuts;
  for (std::size_t i = 1; i + 1 < nx; ++i) cuts.push_back(static_cast<double>(i) * hx);
  if (!cuts.empty()) w.x_breakpoints = [cuts](double) { return cuts; };
  w.decay_radius = y_extent;
  w.transform.truncation_radius = y_extent;
  std::size_t n = 2;
  while (n < 4 * ny) n *= 2;
  w.transform.sample_count = n;
  return w;
}

Profile3D zero_profile_3d() {
  Profile3D w;
  w.descriptor = "zero";
  w.eval = [](double, double, double, double) { return Complex{}; };
  w.analytic_transform = [](double, double, double, double) { return Complex{}; };
  w.analytic_moment = [](int, double, double, double) { return Complex{}; };
  w.decay_radius = 1.0;
  w.transform.truncation_radius = 1.0;
  w.transform.sample_count = 16;
  return w;
}

Profile3D gaussian_profile_3d(Complex z, double L) {
  require_positive(L, "gaussian width L");
  Profile3D w;
  w.descriptor = "gaussian3d z=" + fmt_complex(z) + " L=" + fmt_real(L);
  w.eval = [z, L](double rx, double ry, double, double) {
    return z * std::exp(-(rx * rx + ry * ry) / (2.0 * L * L));
  };
  w.analytic_transform = [z, L](double px, double py, double, double) {
    return z * 2.0 * kPi * L * L * std::exp(-0.5 * L * L * (px * px + py * py));
  };
  w.analytic_moment = [z, L](int l, double px, double py, double) {
    const Complex m0 = z * 2.0 * kPi * L * L * std::exp(-0.5 * L * L * (px * px + py * py));
    return l == 0 ? m0 : 0.5 * m0;
  };
  w.decay_radius = 9.0 * L;
  w.transform.truncation_radius = w.decay_radius;
  w.transform.sample_count = 128;
  return w;
}

}  // namespace lfs
