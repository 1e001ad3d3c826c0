#include "ecf/bernstein.hpp"

#include <cmath>
#include <stdexcept>

namespace ecf {

BernsteinFunction BernsteinFunction::affine(Scalar c, Scalar b) {
  if (!(c >= 0.0) || !(b >= 0.0)) {
    throw std::invalid_argument("BernsteinFunction::affine: c and b must be >= 0");
  }
  BernsteinFunction g;
  g.kind_ = Kind::kAffine;
  g.c_ = c;
  g.b_ = b;
  return g;
}

BernsteinFunction BernsteinFunction::log1p() {
  BernsteinFunction g;
  g.kind_ = Kind::kLog1p;
  return g;
}

BernsteinFunction BernsteinFunction::power(Scalar alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("BernsteinFunction::power: alpha must be in (0, 1]");
  }
  BernsteinFunction g;
  g.kind_ = Kind::kPower;
  g.alpha_ = alpha;
  return g;
}

BernsteinFunction BernsteinFunction::neg_power(Scalar alpha) {
  if (!(alpha <= 0.0)) {
    throw std::invalid_argument("BernsteinFunction::neg_power: alpha must be <= 0");
  }
  BernsteinFunction g;
  g.kind_ = Kind::kNegPower;
  g.alpha_ = alpha;
  return g;
}

BernsteinFunction BernsteinFunction::exp_mixture(Scalar c, Scalar b,
                                                 std::vector<std::pair<Scalar, Scalar>> atoms) {
  if (!(c >= 0.0) || !(b >= 0.0)) {
    throw std::invalid_argument("BernsteinFunction::exp_mixture: c and b must be >= 0");
  }
  for (const auto& [weight, rate] : atoms) {
    if (!(weight > 0.0) || !(rate > 0.0)) {
      throw std::invalid_argument("BernsteinFunction::exp_mixture: weights and rates must be > 0");
    }
  }
  BernsteinFunction g;
  g.kind_ = Kind::kExpMixture;
  g.c_ = c;
  g.b_ = b;
  g.atoms_ = std::move(atoms);
  return g;
}

Scalar BernsteinFunction::operator()(Scalar r) const {
  if (std::isnan(r) || r < 0.0) throw std::domain_error("BernsteinFunction: r must be >= 0");
  switch (kind_) {
    case Kind::kAffine:
      return c_ + b_ * r;
    case Kind::kLog1p:
      return std::log1p(r);
    case Kind::kPower:
      return std::pow(1.0 + r, alpha_) - 1.0;
    case Kind::kNegPower:
      return 1.0 - std::pow(1.0 + r, alpha_);
    case Kind::kExpMixture: {
      Scalar value = c_ + b_ * r;
      for (const auto& [weight, rate] : atoms_) value += weight * (1.0 - std::exp(-rate * r));
      return value;
    }
  }
  throw std::logic_error("BernsteinFunction: unknown kind");
}

bool BernsteinFunction::is_constant() const noexcept {
  switch (kind_) {
    case Kind::kAffine:
      return b_ == 0.0;
    case Kind::kLog1p:
    case Kind::kPower:
      return false;
    case Kind::kNegPower:
      return alpha_ == 0.0;
    case Kind::kExpMixture:
      return b_ == 0.0 && atoms_.empty();
  }
  return false;
}

EcfTable bernstein_transform_ecf(const EcfTable& ecf, const BernsteinFunction& g, Scalar tol) {
  if (g.is_constant()) {
    throw std::invalid_argument("bernstein_transform_ecf: g must be nonconstant");
  }
  if (std::abs(ecf.theta(0)) > tol) {
    throw std::invalid_argument("bernstein_transform_ecf: theta(empty) must be 0");
  }
  const Scalar g0 = g(0.0);
  const Scalar scale = g(1.0) - g0;
  const SubsetMask full = ecf.ground.all_sites();
  SetFunction theta(ecf.ground.size());
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    theta.set(subset, (g(ecf.theta(subset)) - g0) / scale);
  }
  return EcfTable(ecf.ground, std::move(theta));
}

EcfTable convex_combine(const EcfTable& first, const EcfTable& second, Scalar alpha) {
  if (!(first.ground == second.ground)) {
    throw std::invalid_argument("convex_combine: ground sets must match");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("convex_combine: alpha must be in [0, 1]");
  }
  SetFunction theta(first.ground.size(),
                    Array(alpha * first.theta.values() + (1.0 - alpha) * second.theta.values()));
  return EcfTable(first.ground, std::move(theta));
}

TriangleCheck triangle_check(const EcfTable& ecf, const BernsteinFunction& g, SubsetMask a,
                             SubsetMask b, SubsetMask c, Scalar tol) {
  if (a == 0 || b == 0 || c == 0) {
    throw std::invalid_argument("triangle_check: subsets must be nonempty");
  }
  const SubsetMask full = ecf.ground.all_sites();
  if (((a | b | c) & ~full) != 0) {
    throw std::invalid_argument("triangle_check: subset outside ground set");
  }
  // eta = theta - 1 clamped at 0: rounding can leave singleton entries one
  // ulp below 1, and g is only defined on [0, inf).
  const auto g_eta = [&](SubsetMask subset) {
    return g(std::max(ecf.theta(subset) - 1.0, Scalar{0}));
  };
  TriangleCheck result;
  result.slack_nonneg = g_eta(c);
  result.slack_triangle = g_eta(a | c) + g_eta(c | b) - g_eta(c) - g_eta(a | b);
  result.slack = std::min(result.slack_nonneg, result.slack_triangle);
  result.pass = result.slack >= -tol;
  return result;
}

CooleyCheck cooley_check(const EcfTable& ecf, int site_r, int site_s, int site_t, Scalar alpha,
                         Scalar tol) {
  const int m = ecf.ground.size();
  if (site_r < 0 || site_s < 0 || site_t < 0 || site_r >= m || site_s >= m || site_t >= m ||
      site_r == site_s || site_s == site_t || site_r == site_t) {
    throw std::invalid_argument("cooley_check: sites must be distinct and in range");
  }
  if (alpha > 1.0) throw std::invalid_argument("cooley_check: alpha must be <= 1");
  const Scalar theta_st = ecf.theta(singleton_mask(site_s) | singleton_mask(site_t));
  const Scalar theta_sr = ecf.theta(singleton_mask(site_s) | singleton_mask(site_r));
  const Scalar theta_rt = ecf.theta(singleton_mask(site_r) | singleton_mask(site_t));

  CooleyCheck result;
  result.multiplicative_slack = theta_sr * theta_rt - theta_st;
  result.multiplicative_pass = result.multiplicative_slack >= -tol;
  if (alpha > 0.0) {
    result.power_slack =
        std::pow(theta_sr, alpha) + std::pow(theta_rt, alpha) - 1.0 - std::pow(theta_st, alpha);
  } else {
    result.power_slack =
        std::pow(theta_st, alpha) - (std::pow(theta_sr, alpha) + std::pow(theta_rt, alpha) - 1.0);
  }
  result.power_pass = result.power_slack >= -tol;
  result.pass = result.multiplicative_pass && result.power_pass;
  return result;
}

}  // namespace ecf
