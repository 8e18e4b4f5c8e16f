#include "lfs/dyson1d.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "lfs/error.hpp"

namespace lfs {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

// -i ell H(s) = i (k ell w / 2) [[1, e^-], [-e^+, -1]] applied to a 2x2
// matrix stored as 8 doubles (re, im of m11, m12, m21, m22).
void apply_generator(const Profile1D& profile, double k, double ell, double s, const double* u,
                     double* out) {
  const Complex c = kI * (0.5 * k * ell) * profile.value(s, k);
  const double phase = 2.0 * k * ell * s;
  const Complex em{std::cos(phase), -std::sin(phase)};
  const Complex ep = std::conj(em);
  const Complex u11{u[0], u[1]}, u12{u[2], u[3]}, u21{u[4], u[5]}, u22{u[6], u[7]};
  const Complex r[4] = {c * (u11 + em * u21), c * (u12 + em * u22), -c * (ep * u11 + u21),
                        -c * (ep * u12 + u22)};
  for (int i = 0; i < 4; ++i) {
    out[2 * i] = r[i].real();
    out[2 * i + 1] = r[i].imag();
  }
}

std::vector<double> segment_edges(const Profile1D& profile) {
  std::vector<double> edges{0.0};
  for (double b : profile.breakpoints) {
    if (b > 0.0 && b < 1.0) edges.push_back(b);
  }
  edges.push_back(1.0);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

template <class System>
void integrate_unit(System system, State& x, const Profile1D& profile, double rel_tol,
                    double abs_tol) {
  auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State>());
  const std::vector<double> edges = segment_edges(profile);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double h0 = std::min(1e-2, edges[i + 1] - edges[i]);
    odeint::integrate_adaptive(stepper, system, x, edges[i], edges[i + 1], h0);
  }
}

TransferMatrix1D from_state(const double* u) {
  return {{u[0], u[1]}, {u[2], u[3]}, {u[4], u[5]}, {u[6], u[7]}};
}

void check_inputs(double k, double ell) {
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("dyson1d: k must be > 0");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ValidationError("dyson1d: ell must be > 0");
}

}  // namespace

Complex Profile1D::value(double xc, double k) const {
  if (xc < 0.0 || xc > 1.0 || !eval) return {};
  return eval(xc, k);
}

Profile1D profile_1d(const XFactor& x) {
  Profile1D p;
  p.descriptor = x.descriptor;
  p.eval = [f = x.eval](double xc, double) { return f(xc); };
  p.breakpoints = x.breakpoints;
  return p;
}

Profile1D constant_profile_1d(Complex z) { return profile_1d(x_constant(z)); }

Profile1D profile_1d_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("type") && j.at("type") == "zero") {
    Profile1D p = constant_profile_1d(Complex{});
    p.descriptor = "zero";
    return p;
  }
  return profile_1d(x_factor_from_json(j));
}

double TransferMatrix1D::frobenius_norm() const noexcept {
  return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
}

TransferMatrix1D operator+(const TransferMatrix1D& a, const TransferMatrix1D& b) {
  return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

TransferMatrix1D operator-(const TransferMatrix1D& a, const TransferMatrix1D& b) {
  return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

Matrix2 h_check(const Profile1D& profile, double xc, double k, double ell) {
  const Complex c = -0.5 * k * profile.value(xc, k);
  const double phase = 2.0 * k * ell * xc;
  const Complex em{std::cos(phase), -std::sin(phase)};
  return {{{c, c * em}, {-c * std::conj(em), -c}}};
}

DysonSeries dyson_series_1d(const Profile1D& profile, double k, double ell,
                            const DysonOptions& options) {
  check_inputs(k, ell);
  if (options.max_terms < 1) throw ValidationError("dyson1d: max_terms must be >= 1");
  const int n_terms = options.max_terms;
  // Slot 0 holds U_0 = I and stays constant.
  State x(8 * static_cast<std::size_t>(n_terms + 1), 0.0);
  x[0] = 1.0;
  x[6] = 1.0;
  auto system = [&](const State& u, State& du, double s) {
    std::fill(du.begin(), du.begin() + 8, 0.0);
    for (int n = 1; n <= n_terms; ++n) {
      apply_generator(profile, k, ell, s, u.data() + 8 * (n - 1), du.data() + 8 * n);
    }
  };
  integrate_unit(system, x, profile, options.ode_rel_tol, options.ode_abs_tol);

  DysonSeries out;
  TransferMatrix1D sum;
  out.partial_sums.push_back(sum);
  for (int n = 1; n <= n_terms; ++n) {
    const TransferMatrix1D term = from_state(x.data() + 8 * n);
    sum = sum + term;
    out.partial_sums.push_back(sum);
    out.term_norms.push_back(term.frobenius_norm());
    out.terms_used = n;
    if (out.term_norms.back() < options.tol) {
      out.converged = true;
      break;
    }
  }
  out.matrix = sum;
  return out;
}

TransferMatrix1D transfer_matrix_1d(const Profile1D& profile, double k, double ell,
                                    int max_terms, double tol) {
  DysonOptions options;
  options.max_terms = max_terms;
  options.tol = tol;
  DysonSeries s = dyson_series_1d(profile, k, ell, options);
  if (!s.converged) {
    const double last = s.term_norms.empty() ? 0.0 : s.term_norms.back();
    throw NumericalError("dyson1d: series not converged after " + std::to_string(max_terms) +
                             " terms (last increment norm " + std::to_string(last) + ")",
                         s.matrix.m22, last);
  }
  return s.matrix;
}

TransferMatrix1D transfer_matrix_1d_stepping(const Profile1D& profile, double k, double ell,
                                             double rel_tol, double abs_tol) {
  check_inputs(k, ell);
  State x{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
  auto system = [&](const State& u, State& du, double s) {
    apply_generator(profile, k, ell, s, u.data(), du.data());
  };
  integrate_unit(system, x, profile, rel_tol, abs_tol);
  return from_state(x.data());
}

Scattering1D scattering_1d(const TransferMatrix1D& m, double singular_threshold) {
  if (m.m22 == Complex{}) throw NumericalError("scattering_1d: M22 vanishes");
  Scattering1D s;
  s.r_left = -m.m21 / m.m22;
  s.r_right = m.m12 / m.m22;
  s.t = 1.0 / m.m22;
  s.near_singular = std::abs(m.m22) < singular_threshold;
  return s;
}

}  // namespace lfs
