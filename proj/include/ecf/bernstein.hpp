#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ecf/ecf_table.hpp"
#include "ecf/types.hpp"

namespace ecf {

/// A Bernstein function g(r) = c + b r + integral of (1 - e^{-lambda r})
/// against a Levy measure, restricted to a closed family: affine, log(1+r),
/// the power pair (1+r)^a - 1 (0 < a <= 1) and 1 - (1+r)^a (a <= 0), and
/// finite exponential mixtures. The closed family keeps the ECF transform
/// provably valid; arbitrary callables cannot be checked.
class BernsteinFunction {
 public:
  enum class Kind { kAffine, kLog1p, kPower, kNegPower, kExpMixture };

  static BernsteinFunction affine(Scalar c, Scalar b);
  static BernsteinFunction log1p();
  static BernsteinFunction power(Scalar alpha);      // (1+r)^alpha - 1
  static BernsteinFunction neg_power(Scalar alpha);  // 1 - (1+r)^alpha
  static BernsteinFunction exp_mixture(Scalar c, Scalar b,
                                       std::vector<std::pair<Scalar, Scalar>> atoms);

  /// g(r) for r >= 0; negative r is rejected.
  Scalar operator()(Scalar r) const;

  bool is_constant() const noexcept;

  Kind kind() const noexcept { return kind_; }
  Scalar c() const noexcept { return c_; }
  Scalar b() const noexcept { return b_; }
  Scalar alpha() const noexcept { return alpha_; }
  /// (weight, rate) pairs of the exponential mixture.
  const std::vector<std::pair<Scalar, Scalar>>& atoms() const noexcept { return atoms_; }

 private:
  BernsteinFunction() = default;

  Kind kind_ = Kind::kLog1p;
  Scalar c_ = 0.0;
  Scalar b_ = 0.0;
  Scalar alpha_ = 1.0;
  std::vector<std::pair<Scalar, Scalar>> atoms_;
};

inline Scalar bernstein_eval(const BernsteinFunction& g, Scalar r) { return g(r); }

/// New ECF from a nonconstant Bernstein function (closure of the ECF class):
///   theta'(A) = (g(theta(A)) - g(0)) / (g(1) - g(0)),
/// with exact fixed points theta'(empty) = 0 and theta'(singleton) = 1.
EcfTable bernstein_transform_ecf(const EcfTable& ecf, const BernsteinFunction& g,
                                 Scalar tol = kValidateTol);

/// alpha * theta1 + (1 - alpha) * theta2 on a shared ground set; the ECF of
/// the max-combination of independent copies.
EcfTable convex_combine(const EcfTable& first, const EcfTable& second, Scalar alpha);

struct TriangleCheck {
  bool pass = false;
  Scalar slack = 0.0;           // min of the two slacks below
  Scalar slack_nonneg = 0.0;    // g(eta(C))            >= 0
  Scalar slack_triangle = 0.0;  // g.eta(A|C) + g.eta(C|B) - g.eta(C) - g.eta(A|B) >= 0
};

/// Generalized triangle inequalities, eta = theta - 1:
///   g.eta(A|B) <= g.eta(C) + g.eta(A|B) <= g.eta(A|C) + g.eta(C|B).
/// Holds for every valid ECF and Bernstein g; run on arbitrary tables to
/// hunt for violation witnesses.
TriangleCheck triangle_check(const EcfTable& ecf, const BernsteinFunction& g, SubsetMask a,
                             SubsetMask b, SubsetMask c, Scalar tol = kValidateTol);

struct CooleyCheck {
  bool pass = false;
  bool multiplicative_pass = false;
  Scalar multiplicative_slack = 0.0;  // theta_sr * theta_rt - theta_st
  bool power_pass = false;
  Scalar power_slack = 0.0;  // sub-additivity slack for alpha in (0,1], super-additivity for alpha <= 0
};

/// The bivariate inequalities for distinct sites r, s, t:
///   theta_st        <= theta_sr * theta_rt,
///   theta_st^alpha  <= theta_sr^alpha + theta_rt^alpha - 1   (0 < alpha <= 1),
///   theta_st^alpha  >= theta_sr^alpha + theta_rt^alpha - 1   (alpha <= 0).
/// Each is triangle_check with g = log1p, power(alpha), neg_power(alpha)
/// on singleton sets. alpha > 1 is rejected.
CooleyCheck cooley_check(const EcfTable& ecf, int site_r, int site_s, int site_t, Scalar alpha,
                         Scalar tol = kValidateTol);

}  // namespace ecf
