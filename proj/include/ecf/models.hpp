#pragma once

#include <cstdint>

#include "ecf/ecf_table.hpp"
#include "ecf/types.hpp"

namespace ecf {

/// Power variogram of a Gaussian process with stationary increments:
/// gamma(z) = lambda * |z|^alpha with lambda > 0 and 0 < alpha <= 2.
struct VariogramSpec {
  Scalar lambda = 1.0;
  Scalar alpha = 1.0;

  VariogramSpec(Scalar lambda_, Scalar alpha_);
  Scalar operator()(const Vector& dz) const;
};

/// Axis-aligned box kernel of unit volume; the indicator spectral function
/// of a moving-maxima process.
struct BoxKernel {
  Vector lower;
  Vector upper;

  BoxKernel(Vector lower_, Vector upper_);
  int dim() const noexcept { return static_cast<int>(lower.size()); }
};

/// theta(A) = |A|: independent unit Frechet variables.
EcfTable independent_ecf(const GroundSet& ground);

/// theta(A) = 1 for nonempty A: one variable copied to every site.
EcfTable identical_ecf(const GroundSet& ground);

/// theta(A) = sqrt(|A|), the ECF of the Euclidean-norm stable tail
/// dependence function.
EcfTable sqrt_ecf(const GroundSet& ground);

/// Moving-maxima ECF for an indicator kernel: theta(A) is the Lebesgue
/// volume of the union of the translated boxes t + B over t in A, computed
/// exactly by inclusion-exclusion (all intersections of axis-aligned boxes
/// are boxes). Requires site coordinates of the kernel's dimension.
EcfTable m3_box_ecf(const GroundSet& ground, const BoxKernel& kernel);

/// Bivariate Brown-Resnick coefficient 1 + erf(sqrt(gamma/8)) for
/// variogram value gamma >= 0; increases from 1 to 2.
Scalar br_bivariate_theta(Scalar gamma);

struct BrMcResult {
  EcfTable ecf;      // repaired to pass validate_ecf
  Array raw_theta;   // raw Monte Carlo means, indexed by subset mask
  Array std_error;   // standard error of each mean
};

/// Monte Carlo ECF of the Brown-Resnick process with the given variogram:
/// theta(A) = E exp(max_{t in A} W_t - var(W_t)/2) with W pinned to zero at
/// the first site. The covariance built from the variogram must be positive
/// semidefinite (eigenvalues below -1e-10 are rejected, small negatives are
/// clipped). Deterministic in (n, seed) for any worker count.
BrMcResult br_ecf_mc(const GroundSet& ground, const VariogramSpec& variogram, int n,
                     std::uint64_t seed, int threads = 1);

/// Bivariate Husler-Reiss negative log c.d.f. with unit Frechet margins:
///   (1/x1) Phi(sqrt(g)/2 + log(x2/x1)/sqrt(g))
///     + (1/x2) Phi(sqrt(g)/2 + log(x1/x2)/sqrt(g)).
/// gamma = 0 and gamma = +inf are the full-dependence and independence
/// limits.
Scalar hr_bivariate_neg_log_cdf(Scalar gamma, Scalar x1, Scalar x2);

/// Euclidean norm as a stable tail dependence function, defined on x >= 0.
Scalar ball_ell(const Vector& x);

/// Standard normal c.d.f.
Scalar std_normal_cdf(Scalar x);

}  // namespace ecf
