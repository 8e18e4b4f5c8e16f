#include "lfs/kernels.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <ostream>
#include <string>

#include "lfs/error.hpp"
#include "lfs/simd.hpp"

namespace lfs {
namespace {

constexpr int kMaxKernelOrder = 3;

void check_indices(int a, int b) {
  if ((a != 1 && a != 2) || (b != 1 && b != 2)) {
    throw ValidationError("kernel indices a, b must be 1 or 2");
  }
}

void check_momenta(double p, double pp, double k) {
  if (!(std::abs(p) < k) || !(std::abs(pp) < k)) {
    throw ValidationError("kernel momenta must satisfy |p|, |p'| < k");
  }
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

std::size_t factor_key(const ChannelFunctions::Factor& f) {
  return static_cast<std::size_t>((f.order - 1) * 4 + (f.a - 1) * 2 + (f.b - 1));
}

// All ways to write `total` as an ordered sum of `parts` integers in [1, 3].
void compositions(int total, int parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(current);
    return;
  }
  for (int j = 1; j <= kMaxKernelOrder && j <= total - (parts - 1); ++j) {
    current.push_back(j);
    compositions(total - j, parts - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

Complex varpi(double p, double k) {
  if (!(k > 0.0)) throw ValidationError("varpi: k must be > 0");
  if (std::abs(p) < k) return {std::sqrt(k * k - p * p), 0.0};
  return {0.0, std::sqrt(p * p - k * k)};
}

Complex kernel_n1(const MomentSet2D& moments, int a, int b, double p, double pp, double k) {
  check_indices(a, b);
  check_momenta(p, pp, k);
  const double root = std::sqrt(1.0 - pp * pp / (k * k));
  return sign_pow(a) * kI * moments(0, p - pp) / (4.0 * kPi * root);
}

Complex kernel_n2(const MomentSet2D& moments, int a, int b, double p, double pp, double k) {
  check_indices(a, b);
  check_momenta(p, pp, k);
  const double bracket = sign_pow(a + b) - std::sqrt((k * k - p * p) / (k * k - pp * pp));
  if (bracket == 0.0) return {};
  return bracket * moments(1, p - pp) / (4.0 * kPi);
}

Complex kernel_n3(const MomentSet2D& moments, int a, int b, double p, double pp, double k) {
  check_indices(a, b);
  check_momenta(p, pp, k);
  const double u = 1.0 - p * p / (k * k);
  const double v = 1.0 - pp * pp / (k * k);
  const double bracket = 1.0 - (p * p + pp * pp) / (2.0 * k * k) - sign_pow(a + b) * std::sqrt(u * v);
  const double q = p - pp;
  const Complex body = moments(2, q) * bracket + moments(kQSimplex, q);
  return sign_pow(a - 1) * kI * body / (4.0 * kPi * std::sqrt(v));
}

Complex kernel_nj(const MomentSet2D& moments, int j, int a, int b, double p, double pp,
                  double k) {
  switch (j) {
    case 1:
      return kernel_n1(moments, a, b, p, pp, k);
    case 2:
      return kernel_n2(moments, a, b, p, pp, k);
    case 3:
      return kernel_n3(moments, a, b, p, pp, k);
    default:
      throw ValidationError("kernel order must be 1, 2 or 3");
  }
}

Complex kernel_n1(const Profile2D& profile, int a, int b, double p, double pp, double k) {
  return kernel_n1(MomentSet2D(profile, k, {0}), a, b, p, pp, k);
}

Complex kernel_n2(const Profile2D& profile, int a, int b, double p, double pp, double k) {
  return kernel_n2(MomentSet2D(profile, k, {1}), a, b, p, pp, k);
}

Complex kernel_n3(const Profile2D& profile, int a, int b, double p, double pp, double k,
                  const QuadratureSpec& spec) {
  MomentOptions options;
  options.quadrature = spec;
  return kernel_n3(MomentSet2D(profile, k, {2, kQSimplex}, options), a, b, p, pp, k);
}

MomentumGrid MomentumGrid::make(double k, std::size_t count, Substitution substitution) {
  if (!(k > 0.0)) throw ValidationError("momentum grid: k must be > 0");
  if (count < 3) throw ValidationError("momentum grid needs at least 3 nodes");
  const int n = static_cast<int>(count);
  // Nonnegative Legendre zeros in ascending order; zero is included for odd n.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  x.reserve(count);
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it != 0.0) x.push_back(-*it);
  }
  for (double z : half) x.push_back(z);
  if (x.size() != count) throw NumericalError("momentum grid: Legendre root count mismatch");

  MomentumGrid g;
  g.k = k;
  g.substitution = substitution;
  g.nodes.reserve(count);
  g.weights.reserve(count);
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime(n, xi);
    const double w = 2.0 / ((1.0 - xi * xi) * dp * dp);
    if (substitution == Substitution::direct) {
      g.nodes.push_back(k * xi);
      g.weights.push_back(k * w);
    } else {
      const double phi = 0.5 * kPi * xi;
      g.nodes.push_back(k * std::sin(phi));
      g.weights.push_back(0.5 * kPi * w * k * std::cos(phi));
    }
  }
  return g;
}

KernelMatrix build_kernel_matrix(const MomentSet2D& moments, const MomentumGrid& grid,
                                 int order, int a, int b) {
  KernelMatrix m;
  m.order = order;
  m.a = a;
  m.b = b;
  m.n = grid.size();
  m.values.resize(m.n * m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      m.values[i * m.n + j] =
          kernel_nj(moments, order, a, b, grid.nodes[i], grid.nodes[j], grid.k);
    }
  }
  return m;
}

void write_kernel_csv(const KernelMatrix& matrix, const MomentumGrid& grid, std::ostream& out) {
  char buf[160];
  out << "i,j,p_i,p_j,re,im\n";
  for (std::size_t i = 0; i < matrix.n; ++i) {
    for (std::size_t j = 0; j < matrix.n; ++j) {
      const Complex v = matrix.at(i, j);
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", i, j, grid.nodes[i],
                    grid.nodes[j], v.real(), v.imag());
      out << buf;
    }
  }
}

Side incidence_side(const ScatteringConfig2D& config) {
  return std::cos(config.theta0) > 0.0 ? Side::left : Side::right;
}

ChannelFunctions::ChannelFunctions(std::shared_ptr<const MomentSet2D> moments,
                                   const ScatteringConfig2D& config, Side side, int truncation,
                                   MomentumGrid grid)
    : moments_(std::move(moments)),
      config_(config),
      side_(side),
      truncation_(truncation),
      grid_(std::move(grid)),
      matrices_(4 * kMaxKernelOrder),
      have_matrix_(4 * kMaxKernelOrder, false) {
  config_.validate();
  if (truncation < 1 || truncation > kMaxKernelOrder) {
    throw ValidationError("channel truncation must be 1, 2 or 3");
  }
  if (!moments_) throw ValidationError("channel assembly needs a moment set");
  if (std::abs(moments_->k() - config_.k) > 1e-14 * config_.k) {
    throw ValidationError("moment set was prepared for a different k");
  }
  if (std::abs(grid_.k - config_.k) > 1e-14 * config_.k || grid_.size() < 3 ||
      grid_.weights.size() != grid_.nodes.size()) {
    throw ValidationError("momentum grid does not match the configuration");
  }

  // Operator words, listed in the order they act (first element next to p0).
  struct Word {
    Channel channel;
    double sign;
    std::vector<std::pair<int, int>> letters;
  };
  std::vector<Word> words;
  const auto fits = [truncation](const std::vector<std::pair<int, int>>& w) {
    return !w.empty() && static_cast<int>(w.size()) <= truncation;
  };
  for (int j = 0; j <= truncation; ++j) {
    std::vector<std::pair<int, int>> n22(static_cast<std::size_t>(j), {2, 2});
    if (side == Side::left) {
      std::vector<std::pair<int, int>> b{{2, 1}};
      b.insert(b.end(), n22.begin(), n22.end());
      std::vector<std::pair<int, int>> a = b;
      a.push_back({1, 2});
      if (fits(b)) words.push_back({Channel::b_minus, 1.0, b});
      if (fits(a)) words.push_back({Channel::a_plus, -1.0, a});
    } else {
      std::vector<std::pair<int, int>> a = n22;
      a.push_back({1, 2});
      if (fits(n22)) words.push_back({Channel::b_minus, 1.0, n22});
      if (fits(a)) words.push_back({Channel::a_plus, -1.0, a});
    }
  }
  if (side == Side::left) words.push_back({Channel::a_plus, -1.0, {{1, 1}}});

  for (const Word& w : words) {
    const int m = static_cast<int>(w.letters.size());
    for (int total = m; total <= truncation; ++total) {
      std::vector<std::vector<int>> orders;
      std::vector<int> cur;
      compositions(total, m, cur, orders);
      for (const auto& ord : orders) {
        Term t{w.channel, total, w.sign, {}};
        for (int i = 0; i < m; ++i) {
          const auto iu = static_cast<std::size_t>(i);
          t.chain.push_back({ord[iu], w.letters[iu].first, w.letters[iu].second});
        }
        terms_.push_back(std::move(t));
      }
    }
  }

  // Interior factors act between grid nodes and are tabulated once.
  const std::size_t n = grid_.size();
  for (const Term& t : terms_) {
    for (std::size_t i = 1; i + 1 < t.chain.size(); ++i) {
      const std::size_t key = factor_key(t.chain[i]);
      if (have_matrix_[key]) continue;
      Matrix& mat = matrices_[key];
      mat.re.resize(n * n);
      mat.im.resize(n * n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          const Complex v = grid_.weights[c] * kernel_nj(*moments_, t.chain[i].order,
                                                         t.chain[i].a, t.chain[i].b,
                                                         grid_.nodes[r], grid_.nodes[c], grid_.k);
          mat.re[r * n + c] = v.real();
          mat.im[r * n + c] = v.imag();
        }
      }
      have_matrix_[key] = true;
    }
  }
}

const ChannelFunctions::Matrix& ChannelFunctions::matrix(const Factor& f) const {
  return matrices_[factor_key(f)];
}

Complex ChannelFunctions::delta_coefficient(Channel channel) const {
  const bool has_delta = (side_ == Side::left && channel == Channel::a_plus) ||
                         (side_ == Side::right && channel == Channel::b_minus);
  return has_delta ? Complex(2.0 * kPi * config_.varpi0()) : Complex{};
}

Complex ChannelFunctions::term_value(const Term& t, double p) const {
  const MomentSet2D& ms = *moments_;
  const double k = grid_.k;
  const double p0 = config_.p0();
  const Factor& first = t.chain.front();
  if (t.chain.size() == 1) return kernel_nj(ms, first.order, first.a, first.b, p, p0, k);

  const std::size_t n = grid_.size();
  std::vector<double> ure(n), uim(n), vre(n), vim(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = kernel_nj(ms, first.order, first.a, first.b, grid_.nodes[i], p0, k);
    ure[i] = v.real();
    uim[i] = v.imag();
  }
  const std::span<const double> ur(ure), ui(uim);
  for (std::size_t f = 1; f + 1 < t.chain.size(); ++f) {
    const Matrix& mat = matrix(t.chain[f]);
    const std::span<const double> mr(mat.re), mi(mat.im);
    for (std::size_t r = 0; r < n; ++r) {
      const Complex v = simd::complex_dot(mr.subspan(r * n, n), mi.subspan(r * n, n), ur, ui);
      vre[r] = v.real();
      vim[r] = v.imag();
    }
    ure.swap(vre);
    uim.swap(vim);
  }
  const Factor& last = t.chain.back();
  std::vector<double> rre(n), rim(n);
  for (std::size_t c = 0; c < n; ++c) {
    const Complex v =
        grid_.weights[c] * kernel_nj(ms, last.order, last.a, last.b, p, grid_.nodes[c], k);
    rre[c] = v.real();
    rim[c] = v.imag();
  }
  return simd::complex_dot(rre, rim, ure, uim);
}

Complex ChannelFunctions::smooth_coefficient(Channel channel, int order, double p) const {
  Complex acc{};
  for (const Term& t : terms_) {
    if (t.channel != channel || t.order != order) continue;
    acc += t.sign * term_value(t, p);
  }
  return 2.0 * kPi * config_.varpi0() * acc;
}

Complex ChannelFunctions::smooth(Channel channel, double p) const {
  Complex acc{};
  const double kl = config_.kl();
  for (int o = truncation_; o >= 1; --o) acc = (acc + smooth_coefficient(channel, o, p)) * kl;
  return acc;
}

ChannelFunctions assemble_channels(std::shared_ptr<const MomentSet2D> moments,
                                   const ScatteringConfig2D& config, Side side, int truncation,
                                   const MomentumGrid& grid) {
  return ChannelFunctions(std::move(moments), config, side, truncation, grid);
}

std::shared_ptr<const MomentSet2D> kernel_moments(const Profile2D& profile, double k,
                                                  int truncation, const MomentOptions& options) {
  std::vector<int> indices{0, 1};
  if (truncation >= 3) {
    indices.push_back(2);
    indices.push_back(kQSimplex);
  }
  return std::make_shared<const MomentSet2D>(profile, k, indices, options);
}

Complex amplitude_coefficient_from_channels(const ChannelFunctions& channels,
                                            const ScatteringConfig2D& config, double theta,
                                            int order) {
  validate_detector_angle(theta);
  const auto channel = std::cos(theta) > 0.0 ? ChannelFunctions::Channel::a_plus
                                             : ChannelFunctions::Channel::b_minus;
  const double p = config.k * std::sin(theta);
  return -kI / std::sqrt(2.0 * kPi) * channels.smooth_coefficient(channel, order, p);
}

Complex amplitude_from_kernels(const Profile2D& profile, const ScatteringConfig2D& config,
                               double theta, int truncation, std::size_t nodes,
                               Substitution substitution) {
  if (truncation != 1 && truncation != 2) {
    throw ValidationError("amplitude_from_kernels: truncation must be 1 or 2");
  }
  config.validate();
  validate_detector_angle(theta);
  const ChannelFunctions channels =
      assemble_channels(kernel_moments(profile, config.k, truncation), config,
                        incidence_side(config), truncation,
                        MomentumGrid::make(config.k, nodes, substitution));
  Complex acc{};
  const double kl = config.kl();
  for (int o = truncation; o >= 1; --o) {
    acc = (acc + amplitude_coefficient_from_channels(channels, config, theta, o)) * kl;
  }
  return acc;
}

}  // namespace lfs
