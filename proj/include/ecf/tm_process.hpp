#pragma once

#include <cstdint>
#include <vector>

#include "ecf/ecf_table.hpp"
#include "ecf/types.hpp"

namespace ecf {

/// The Tawn-Molchanov process at finite resolution: the max-linear model
///   X_i = max over nonempty L containing i of tau_L * Z_L
/// with i.i.d. unit Frechet Z_L. Holds the defining weights, the cached ECF
/// (equal to ecf_from_tau(tau)), and the positive atoms used in simulation.
class TmProcess {
 public:
  explicit TmProcess(TauTable tau, Scalar tol = kValidateTol);

  const TauTable& tau() const noexcept { return tau_; }
  const EcfTable& theta() const noexcept { return theta_; }
  const GroundSet& ground() const noexcept { return tau_.ground; }
  int num_sites() const noexcept { return tau_.ground.size(); }

  /// Atoms with weight above the simulation threshold, ascending mask order.
  const std::vector<SubsetMask>& atom_masks() const noexcept { return atom_masks_; }
  const std::vector<Scalar>& atom_weights() const noexcept { return atom_weights_; }

 private:
  TauTable tau_;
  EcfTable theta_;
  std::vector<SubsetMask> atom_masks_;
  std::vector<Scalar> atom_weights_;
};

/// Builds the TM process realizing a valid ECF (theta* = theta). Rejects
/// invalid tables with the diagnostics message of the first violation.
TmProcess tm_from_ecf(const EcfTable& ecf, Scalar tol = kValidateTol);

/// Exact negative log c.d.f. of the TM process (finite-dimensional
/// distribution):  -log P(X <= x) = sum over L of tau_L max_{t in L} 1/x_t.
/// Coordinates must be positive; +infinity is allowed and drops the site.
Scalar neg_log_cdf(const TmProcess& process, const Vector& x);

/// Bivariate form, eta = theta({s,t}) - 1 in [0,1]:
///   eta/(x v y) + 1/(x ^ y).
Scalar bivariate_neg_log_cdf(Scalar eta, Scalar x, Scalar y);

/// Stable tail dependence function: ell(x) = sum over L of tau_L
/// max_{t in L} x_t for x >= 0, x != 0; agrees with neg_log_cdf at 1/x.
Scalar stable_tail_dependence(const TmProcess& process, const Vector& x);

/// Exact negative log c.d.f. of a general max-linear vector:
///   sum over atoms j of max_i a_ij / x_i.
Scalar maxlinear_neg_log_cdf(const DiscreteSpectralMeasure& sm, const Vector& x);

/// A batch of exact unit-Frechet-margin samples, one replicate per row.
struct SampleBatch {
  GroundSet ground;
  Matrix values;  // n x m, strictly positive
  std::uint64_t seed = 0;

  int n() const noexcept { return static_cast<int>(values.rows()); }
};

/// Exact simulation of the TM process; replicate k draws its atoms from
/// counter stream k of the seed, so output is identical for any worker
/// count.
SampleBatch simulate_tm(const TmProcess& process, int n, std::uint64_t seed, int threads = 1);

/// Exact simulation of a general max-linear vector, atoms = columns.
SampleBatch simulate_maxlinear(const DiscreteSpectralMeasure& sm, int n, std::uint64_t seed,
                               int threads = 1);

struct EcfEstimate {
  Scalar value = 0.0;
  Scalar std_error = 0.0;
};

/// Rate estimator of theta(A): 1/max_{t in A} X_t is Exponential(theta(A))
/// under simple max-stability, so theta_hat = n / sum_k 1/max_{t in A} X^k
/// with delta-method standard error theta_hat / sqrt(n).
EcfEstimate empirical_ecf(const SampleBatch& batch, SubsetMask subset);

struct ContinuityBound {
  Scalar tight = 0.0;   // 2 (1 - exp(-eta/eps))
  Scalar linear = 0.0;  // 2 eta / eps
};

/// Upper bounds on P(|X_s - X_t| > eps) for the TM process in terms of the
/// bivariate eta = theta({s,t}) - 1; tight <= linear always.
ContinuityBound continuity_bound(Scalar eta, Scalar eps);

}  // namespace ecf
