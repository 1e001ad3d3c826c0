#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecf/ground_set.hpp"
#include "ecf/set_function.hpp"
#include "ecf/types.hpp"

namespace ecf {

/// An extremal coefficient function at finite resolution: theta maps every
/// subset of the ground set to a real value. Construction checks shape
/// only — invalid tables are first-class inputs so that diagnostics can be
/// produced for them.
struct EcfTable {
  GroundSet ground;
  SetFunction theta;

  EcfTable(GroundSet g, SetFunction t);

  Scalar operator()(SubsetMask mask) const { return theta(mask); }
};

/// The discrete spectral weights tau^M_L of a TM process, one per nonempty
/// subset L. tau(0) is kept at 0.
struct TauTable {
  GroundSet ground;
  SetFunction tau;

  TauTable(GroundSet g, SetFunction t);

  Scalar operator()(SubsetMask mask) const { return tau(mask); }
};

/// A general max-linear model: nonnegative coefficients with one row per
/// site and one column per spectral atom; every row sums to one. All-zero
/// columns are dropped at construction.
class DiscreteSpectralMeasure {
 public:
  DiscreteSpectralMeasure(GroundSet ground, Matrix atoms, Scalar tol = kValidateTol);

  const GroundSet& ground() const noexcept { return ground_; }
  const Matrix& atoms() const noexcept { return atoms_; }
  int num_sites() const noexcept { return static_cast<int>(atoms_.rows()); }
  int num_atoms() const noexcept { return static_cast<int>(atoms_.cols()); }

 private:
  GroundSet ground_;
  Matrix atoms_;
};

struct EcfDiagnostic {
  std::string constraint;  // e.g. "theta(singleton) != 1", "exceeds |A|"
  SubsetMask subset = 0;
  Scalar magnitude = 0.0;  // size of the violation
};

struct EcfValidation {
  bool pass = false;
  Scalar min_tau = 0.0;
  SubsetMask min_tau_subset = 0;
  std::vector<EcfDiagnostic> violations;
};

/// Spectral weights of the TM process realizing theta as its own ECF:
///   tau^M_L = sum over I subset of L of (-1)^{|I|+1} theta((M \ L) | I),
/// the negated nested singleton difference of theta at base M \ L.
/// Requires theta(empty) = 0 and theta(singleton) = 1 within tol; validity
/// is NOT required — negative coefficients are returned so that callers can
/// report witnesses. Each coefficient is a pairwise-summed alternating sum;
/// the full table costs O(3^m).
TauTable compute_tau(const EcfTable& ecf, Scalar tol = kValidateTol);

/// Checks that theta is a valid ECF: normalization plus nonnegativity of
/// every tau coefficient within tol. Diagnostics list every violated
/// constraint (normalization, the [1, |A|] range, monotonicity on covering
/// pairs, negative tau) with its subset and magnitude. Never throws.
EcfValidation validate_ecf(const EcfTable& ecf, Scalar tol = kValidateTol);

/// Reconstructs the ECF from spectral weights:
///   theta(A) = sum of tau_L over L intersecting A,  theta(empty) = 0,
/// evaluated for all A at once via a subset-sum transform in O(m 2^m).
/// Requires tau nonnegative with unit row sums (within tol).
EcfTable ecf_from_tau(const TauTable& tau, Scalar tol = kValidateTol);

/// Weights of the sub-window A:  tau^A_K = sum over J subset of M \ A of
/// tau^M_{K | J}. A must be nonempty.
TauTable marginalize_tau(const TauTable& tau, SubsetMask window);

/// Restriction of the table to the sub-ground-set A (same theta values on
/// subsets of A). A must be nonempty.
EcfTable restrict_ecf(const EcfTable& ecf, SubsetMask window);

/// ECF of a max-linear vector: theta(A) = sum over atoms j of
/// max_{i in A} a_ij. Always a valid ECF.
EcfTable ecf_from_spectral_measure(const DiscreteSpectralMeasure& sm);

/// Row-normalized i.i.d.-uniform coefficient matrix; deterministic in
/// (m, q, seed).
DiscreteSpectralMeasure random_spectral_measure(int num_sites, int num_atoms,
                                                std::uint64_t seed);

/// Valid-by-construction random ECF (the ECF of random_spectral_measure).
EcfTable random_valid_ecf(int num_sites, int num_atoms, std::uint64_t seed);

/// Repairs a table that is within noise of a valid ECF: pins the
/// normalization, restores monotonicity by the least monotone majorant,
/// clips negative tau coefficients to zero and rebuilds the table from the
/// row-normalized max-linear measure of the clipped weights. The output
/// passes validate_ecf; the adjustment is of the order of the input's
/// distance from validity. Throws if the input is too far from valid for
/// the row normalization to make sense.
EcfTable project_to_valid_ecf(const EcfTable& ecf);

namespace detail {

/// Pairwise (tree) summation of buf[0..n); used for the alternating sums.
Scalar pairwise_sum(const Scalar* buf, std::size_t n);

/// tau extraction without the normalization precondition (used by
/// validate_ecf, which must accept arbitrary tables).
SetFunction tau_from_theta_unchecked(const SetFunction& theta);

}  // namespace detail

}  // namespace ecf
