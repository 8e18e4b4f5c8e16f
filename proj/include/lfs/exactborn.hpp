#pragma once

// Profiles whose transverse transform vanishes for p <= alpha. For them the
// first Born approximation is exact when k <= alpha, and they do not scatter
// at all when k <= alpha / 2.

#include "lfs/amp2d.hpp"
#include "lfs/profiles.hpp"

namespace lfs {

struct Ex1Params {
  Complex z{0.1, 0.0};
  double alpha = 1.0;
  double L = 1.0;

  void validate() const;
};

Profile2D ex1_profile(const Ex1Params& params);

struct SupportCheckSpec {
  std::size_t x_samples = 5;
  std::size_t p_samples = 64;
  /// Momenta are sampled on [alpha - span, alpha]; zero selects 2 alpha + 10 / decay_radius.
  double span = 0.0;
  /// Relative to the largest |w~| seen on [alpha, alpha + span].
  double tolerance = 1e-12;
};

/// True when |w~(x_c, p; k)| is negligible for all sampled p <= alpha.
bool is_born_exact(const Profile2D& profile, double alpha, double k,
                   const SupportCheckSpec& spec = {});

class BornExactProfile {
 public:
  /// Verifies the support condition at wavenumber k on construction.
  BornExactProfile(Profile2D base, double alpha, double k, const SupportCheckSpec& spec = {});

  const Profile2D& base() const noexcept { return base_; }
  double alpha() const noexcept { return alpha_; }

 private:
  Profile2D base_;
  double alpha_;
};

/// -k^2 int_0^ell dx e^{-i x px} w~(x/ell, py; k), the 2D transform of the
/// interaction potential.
Complex ttv(const Profile2D& profile, double ell, double px, double py, double k,
            const QuadratureSpec& spec = {});

/// Exact amplitude -ttv(k c, k s) / (2 sqrt(2 pi)); refuses k > alpha.
Complex exact_amplitude(const BornExactProfile& profile, const ScatteringConfig2D& config,
                        double theta, const QuadratureSpec& spec = {});

Complex ex1_f1(const Ex1Params& params, const ScatteringConfig2D& config, double theta);
Complex ex1_f2(const Ex1Params& params, const ScatteringConfig2D& config, double theta);
/// Closed-form exact amplitude of the ex1 profile; refuses k > alpha.
Complex ex1_exact(const Ex1Params& params, const ScatteringConfig2D& config, double theta);

/// The phi integral of the product of two ex1 moment factors, normalized so
/// that it enters f2 with the prefactor (i/2) sqrt(pi/2) z^2 K^4 e^{K(2 xi - s)}.
double x_function(double varsigma, double varsigma0, double xi);

}  // namespace lfs
