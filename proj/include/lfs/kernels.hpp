#pragma once

// Momentum-space oracle for the 2D amplitude: the kernels N^(j)_ab of the
// fundamental transfer matrix, their series solutions for the channel
// functions A_+ and B_-, and the amplitude recovered from them.
//
// Operator products are discretized by Nystrom quadrature on a momentum
// grid; the outermost kernel is evaluated exactly at the requested momentum,
// so no interpolation between grid nodes is needed.

#include <iosfwd>
#include <memory>
#include <vector>

#include "lfs/amp2d.hpp"
#include "lfs/numerics.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

/// sqrt(k^2 - p^2) for |p| < k, i sqrt(p^2 - k^2) otherwise.
Complex varpi(double p, double k);

Complex kernel_n1(const MomentSet2D& moments, int a, int b, double p, double pp, double k);
Complex kernel_n2(const MomentSet2D& moments, int a, int b, double p, double pp, double k);
/// Requires moments 2 and kQSimplex in the set.
Complex kernel_n3(const MomentSet2D& moments, int a, int b, double p, double pp, double k);
/// Dispatches on order j in {1, 2, 3}.
Complex kernel_nj(const MomentSet2D& moments, int j, int a, int b, double p, double pp,
                  double k);

Complex kernel_n1(const Profile2D& profile, int a, int b, double p, double pp, double k);
Complex kernel_n2(const Profile2D& profile, int a, int b, double p, double pp, double k);
Complex kernel_n3(const Profile2D& profile, int a, int b, double p, double pp, double k,
                  const QuadratureSpec& spec = {});

enum class Substitution { direct, sine };

struct MomentumGrid {
  std::vector<double> nodes;    // p in (-k, k)
  std::vector<double> weights;  // for int_{-k}^{k} dp
  Substitution substitution = Substitution::sine;
  double k = 1.0;

  /// Gauss-Legendre nodes in p (direct) or in phi with p = k sin(phi) (sine).
  static MomentumGrid make(double k, std::size_t count, Substitution substitution);
  std::size_t size() const noexcept { return nodes.size(); }
};

struct KernelMatrix {
  int order = 1;
  int a = 1;
  int b = 1;
  std::size_t n = 0;
  std::vector<Complex> values;  // row-major N(p_i, p_j)

  Complex at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

KernelMatrix build_kernel_matrix(const MomentSet2D& moments, const MomentumGrid& grid,
                                 int order, int a, int b);

/// CSV rows "i,j,p_i,p_j,re,im".
void write_kernel_csv(const KernelMatrix& matrix, const MomentumGrid& grid, std::ostream& out);

enum class Side { left, right };

/// Side from which the incident wave arrives: left for cos(theta0) > 0.
Side incidence_side(const ScatteringConfig2D& config);

/// A_+ and B_- as series truncated at a total power of k ell. Each smooth
/// contribution is a product of kernels applied to the delta at p0; the delta
/// parts are kept as coefficients of delta(p - p0).
class ChannelFunctions {
 public:
  enum class Channel { a_plus, b_minus };

  struct Factor {
    int order;
    int a;
    int b;
  };
  struct Term {
    Channel channel;
    int order;                  // total power of k ell
    double sign;                // +1 or -1
    std::vector<Factor> chain;  // rightmost factor acts first (chain[0] is next to p0)
  };

  ChannelFunctions(std::shared_ptr<const MomentSet2D> moments, const ScatteringConfig2D& config,
                   Side side, int truncation, MomentumGrid grid);

  /// Coefficient of delta(p - p0).
  Complex delta_coefficient(Channel channel) const;
  /// Smooth part at arbitrary p in (-k, k), summed over orders with (k ell)^order.
  Complex smooth(Channel channel, double p) const;
  /// Smooth part of a single order without the (k ell)^order factor.
  Complex smooth_coefficient(Channel channel, int order, double p) const;

  const std::vector<Term>& terms() const noexcept { return terms_; }
  const MomentumGrid& grid() const noexcept { return grid_; }
  int truncation() const noexcept { return truncation_; }
  Side side() const noexcept { return side_; }

 private:
  struct Matrix {
    std::vector<double> re;  // row-major, column weights folded in
    std::vector<double> im;
  };

  const Matrix& matrix(const Factor& f) const;
  Complex term_value(const Term& t, double p) const;

  std::shared_ptr<const MomentSet2D> moments_;
  ScatteringConfig2D config_;
  Side side_;
  int truncation_;
  MomentumGrid grid_;
  std::vector<Term> terms_;
  std::vector<Matrix> matrices_;  // indexed by factor key
  std::vector<bool> have_matrix_;
};

/// Truncations 1..3 are supported (3 needs the third-order kernel moments).
ChannelFunctions assemble_channels(std::shared_ptr<const MomentSet2D> moments,
                                   const ScatteringConfig2D& config, Side side, int truncation,
                                   const MomentumGrid& grid);

/// Moment set with everything the kernels up to `truncation` need.
std::shared_ptr<const MomentSet2D> kernel_moments(const Profile2D& profile, double k,
                                                  int truncation,
                                                  const MomentOptions& options = {});

/// Per-order amplitude coefficient recovered from the channel functions,
/// -i/sqrt(2 pi) times the smooth part of A_+ (cos theta > 0) or B_-.
Complex amplitude_coefficient_from_channels(const ChannelFunctions& channels,
                                            const ScatteringConfig2D& config, double theta,
                                            int order);

/// Truncated amplitude (truncation 1 or 2) through the kernel series.
Complex amplitude_from_kernels(const Profile2D& profile, const ScatteringConfig2D& config,
                               double theta, int truncation, std::size_t nodes = 201,
                               Substitution substitution = Substitution::sine);

}  // namespace lfs
