#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

#include "lfs/error.hpp"
#include "lfs/numerics.hpp"
#include "lfs/simd.hpp"

namespace lfs {
namespace {

void check_finite(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError("fourier: sampled function is not finite");
  }
}

void check_edge(double edge, double peak, double tol, double radius) {
  if (edge > tol * peak) {
    throw NumericalError("fourier: insufficient decay at truncation radius " +
                         std::to_string(radius) + " (edge/peak = " +
                         std::to_string(edge / peak) + ")");
  }
}

constexpr std::size_t kMemoCapacity = 1 << 16;

}  // namespace

struct FourierSampler1D::Memo {
  std::mutex mutex;
  std::unordered_map<double, Complex> values;
};

FourierSampler1D::FourierSampler1D(const Integrand1D& f, const TransformSpec& spec)
    : radius_(spec.truncation_radius), memo_(std::make_shared<Memo>()) {
  TransformSpec s = spec;
  s.scheme = TransformScheme::numeric;
  s.validate();
  const std::size_t n = spec.sample_count;
  step_ = 2.0 * radius_ / static_cast<double>(n);
  re_.resize(n + 1);
  im_.resize(n + 1);
  double peak = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double y = -radius_ + static_cast<double>(j) * step_;
    const Complex v = f(y);
    check_finite(v);
    peak = std::max(peak, std::abs(v));
    const double w = (j == 0 || j == n) ? 0.5 * step_ : step_;
    re_[j] = w * v.real();
    im_[j] = w * v.imag();
  }
  const double edge = std::max(std::hypot(re_.front(), im_.front()),
                               std::hypot(re_.back(), im_.back())) / (0.5 * step_);
  check_edge(edge, std::max(peak, spec.edge_scale), spec.edge_tolerance, radius_);
}

Complex FourierSampler1D::transform(double p) const {
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    const auto it = memo_->values.find(p);
    if (it != memo_->values.end()) return it->second;
  }
  const Complex v = simd::phase_sum(re_, im_, -radius_, step_, p);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  if (memo_->values.size() >= kMemoCapacity) memo_->values.clear();
  memo_->values.emplace(p, v);
  return v;
}

FourierSampler2D::FourierSampler2D(const Integrand2D& f, const TransformSpec& spec)
    : radius_(spec.truncation_radius) {
  TransformSpec s = spec;
  s.scheme = TransformScheme::numeric;
  s.validate();
  const std::size_t n = spec.sample_count;
  n_ = n + 1;
  step_ = 2.0 * radius_ / static_cast<double>(n);
  re_.resize(n_ * n_);
  im_.resize(n_ * n_);
  double peak = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double x = -radius_ + static_cast<double>(i) * step_;
    const double wx = (i == 0 || i == n) ? 0.5 * step_ : step_;
    for (std::size_t j = 0; j < n_; ++j) {
      const double y = -radius_ + static_cast<double>(j) * step_;
      const double wy = (j == 0 || j == n) ? 0.5 * step_ : step_;
      const Complex v = f(x, y);
      check_finite(v);
      const double mag = std::abs(v);
      peak = std::max(peak, mag);
      if (i == 0 || i == n || j == 0 || j == n) edge = std::max(edge, mag);
      re_[i * n_ + j] = wx * wy * v.real();
      im_[i * n_ + j] = wx * wy * v.imag();
    }
  }
  check_edge(edge, std::max(peak, spec.edge_scale), spec.edge_tolerance, radius_);
}

Complex FourierSampler2D::transform(double px, double py) const {
  std::vector<double> row_re(n_);
  std::vector<double> row_im(n_);
  const std::span<const double> all_re(re_);
  const std::span<const double> all_im(im_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Complex r = simd::phase_sum(all_re.subspan(i * n_, n_), all_im.subspan(i * n_, n_),
                                      -radius_, step_, py);
    row_re[i] = r.real();
    row_im[i] = r.imag();
  }
  return simd::phase_sum(row_re, row_im, -radius_, step_, px);
}

Complex fourier_1d(const Integrand1D& f, double p, const TransformSpec& spec) {
  return FourierSampler1D(f, spec).transform(p);
}

Complex fourier_2d(const Integrand2D& f, double px, double py, const TransformSpec& spec) {
  return FourierSampler2D(f, spec).transform(px, py);
}

}  // namespace lfs
