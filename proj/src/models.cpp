#include "ecf/models.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ecf/parallel.hpp"
#include "ecf/rng.hpp"

namespace ecf {

namespace {

constexpr Scalar kBoxVolumeTol = 1e-12;
constexpr Scalar kEigenvalueFloor = -1e-10;
// Replicates per reduction block; partial sums are merged in block order so
// the estimate is identical for any worker count.
constexpr int kMcBlock = 4096;

}  // namespace

VariogramSpec::VariogramSpec(Scalar lambda_, Scalar alpha_) : lambda(lambda_), alpha(alpha_) {
  if (!(lambda > 0.0)) throw std::invalid_argument("VariogramSpec: lambda must be > 0");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("VariogramSpec: alpha must be in (0, 2]");
  }
}

Scalar VariogramSpec::operator()(const Vector& dz) const {
  return lambda * std::pow(dz.norm(), alpha);
}

BoxKernel::BoxKernel(Vector lower_, Vector upper_) : lower(std::move(lower_)), upper(std::move(upper_)) {
  if (lower.size() != upper.size() || lower.size() < 1) {
    throw std::invalid_argument("BoxKernel: corner dimensions must match");
  }
  Scalar volume = 1.0;
  for (Eigen::Index d = 0; d < lower.size(); ++d) {
    if (!(upper[d] > lower[d])) throw std::invalid_argument("BoxKernel: upper must exceed lower");
    volume *= upper[d] - lower[d];
  }
  if (std::abs(volume - 1.0) > kBoxVolumeTol) {
    throw std::invalid_argument("BoxKernel: volume must be 1 (got " + std::to_string(volume) + ")");
  }
}

EcfTable independent_ecf(const GroundSet& ground) {
  SetFunction theta(ground.size());
  const SubsetMask full = ground.all_sites();
  for (SubsetMask subset = 0; subset <= full; ++subset) {
    theta.set(subset, static_cast<Scalar>(subset_size(subset)));
  }
  return EcfTable(ground, std::move(theta));
}

EcfTable identical_ecf(const GroundSet& ground) {
  SetFunction theta(ground.size());
  const SubsetMask full = ground.all_sites();
  for (SubsetMask subset = 1; subset <= full; ++subset) theta.set(subset, 1.0);
  return EcfTable(ground, std::move(theta));
}

EcfTable sqrt_ecf(const GroundSet& ground) {
  SetFunction theta(ground.size());
  const SubsetMask full = ground.all_sites();
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    theta.set(subset, std::sqrt(static_cast<Scalar>(subset_size(subset))));
  }
  return EcfTable(ground, std::move(theta));
}

EcfTable m3_box_ecf(const GroundSet& ground, const BoxKernel& kernel) {
  if (!ground.has_coords()) throw std::invalid_argument("m3_box_ecf: site coordinates required");
  const Matrix& coords = ground.coords();
  if (coords.cols() != kernel.dim()) {
    throw std::invalid_argument("m3_box_ecf: coordinate dimension does not match kernel");
  }
  const int m = ground.size();
  const int d = kernel.dim();
  const SubsetMask full = ground.all_sites();

  // Volume of the intersection of the boxes t + B over t in `subset`.
  const auto intersection_volume = [&](SubsetMask subset) {
    Scalar volume = 1.0;
    for (int k = 0; k < d && volume > 0.0; ++k) {
      Scalar lo = -std::numeric_limits<Scalar>::infinity();
      Scalar hi = std::numeric_limits<Scalar>::infinity();
      for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
        const int site = lowest_site(rest);
        lo = std::max(lo, coords(site, k) + kernel.lower[k]);
        hi = std::min(hi, coords(site, k) + kernel.upper[k]);
      }
      volume *= std::max(Scalar{0}, hi - lo);
    }
    return volume;
  };

  SetFunction theta(m);
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    Scalar sum = 0.0;
    for_each_submask(subset, [&](SubsetMask inner) {
      if (inner == 0) return;
      const Scalar volume = intersection_volume(inner);
      sum += (subset_size(inner) % 2 == 1) ? volume : -volume;
    });
    theta.set(subset, sum);
  }
  return EcfTable(ground, std::move(theta));
}

Scalar br_bivariate_theta(Scalar gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("br_bivariate_theta: gamma must be >= 0");
  return 1.0 + std::erf(std::sqrt(gamma / 8.0));
}

Scalar std_normal_cdf(Scalar x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

BrMcResult br_ecf_mc(const GroundSet& ground, const VariogramSpec& variogram, int n,
                     std::uint64_t seed, int threads) {
  if (!ground.has_coords()) throw std::invalid_argument("br_ecf_mc: site coordinates required");
  if (n < 2) throw std::invalid_argument("br_ecf_mc: need at least 2 replicates");
  const int m = ground.size();
  if (m > 12) throw std::invalid_argument("br_ecf_mc: supported for m <= 12");
  const Matrix& coords = ground.coords();

  // Covariance of W anchored at the first site (W_{t0} = 0):
  //   C(s, t) = (gamma(s - t0) + gamma(t - t0) - gamma(s - t)) / 2.
  Matrix cov(m, m);
  Vector gamma_to_anchor(m);
  for (int i = 0; i < m; ++i) {
    gamma_to_anchor[i] = variogram(Vector(coords.row(i) - coords.row(0)));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const Scalar g_ij = variogram(Vector(coords.row(i) - coords.row(j)));
      cov(i, j) = cov(j, i) = 0.5 * (gamma_to_anchor[i] + gamma_to_anchor[j] - g_ij);
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success) throw std::runtime_error("br_ecf_mc: eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("br_ecf_mc: covariance is not positive semidefinite");
  }
  const Matrix factor =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  const Vector half_variance = 0.5 * cov.diagonal();

  const std::size_t table = std::size_t{1} << m;
  const int num_blocks = (n + kMcBlock - 1) / kMcBlock;
  Matrix block_sum = Matrix::Zero(static_cast<Eigen::Index>(table), num_blocks);
  Matrix block_sumsq = Matrix::Zero(static_cast<Eigen::Index>(table), num_blocks);

  parallel_for(0, num_blocks, threads, [&](std::int64_t block) {
    const int lo = static_cast<int>(block) * kMcBlock;
    const int hi = std::min(n, lo + kMcBlock);
    Vector normals(m), field(m);
    Array subset_max(static_cast<Eigen::Index>(table));
    auto sum = block_sum.col(block);
    auto sumsq = block_sumsq.col(block);
    for (int k = lo; k < hi; ++k) {
      CounterRng rng(seed, static_cast<std::uint64_t>(k));
      for (int i = 0; i < m; ++i) normals[i] = rng.normal(static_cast<std::uint64_t>(i));
      field = factor * normals - half_variance;
      subset_max[0] = 0.0;
      for (SubsetMask subset = 1; subset < table; ++subset) {
        const int site = lowest_site(subset);
        const Scalar prev = subset == singleton_mask(site)
                                ? -std::numeric_limits<Scalar>::infinity()
                                : subset_max[subset & (subset - 1)];
        subset_max[subset] = std::max(prev, field[site]);
      }
      for (SubsetMask subset = 1; subset < table; ++subset) {
        const Scalar y = std::exp(subset_max[subset]);
        sum[subset] += y;
        sumsq[subset] += y * y;
      }
    }
  });

  Array raw = Array::Zero(static_cast<Eigen::Index>(table));
  Array se = Array::Zero(static_cast<Eigen::Index>(table));
  for (SubsetMask subset = 1; subset < table; ++subset) {
    Scalar sum = 0.0, sumsq = 0.0;
    for (int block = 0; block < num_blocks; ++block) {
      sum += block_sum(subset, block);
      sumsq += block_sumsq(subset, block);
    }
    const Scalar mean = sum / n;
    const Scalar variance = std::max(Scalar{0}, (sumsq - n * mean * mean) / (n - 1));
    raw[subset] = mean;
    se[subset] = std::sqrt(variance / n);
  }

  EcfTable repaired = project_to_valid_ecf(EcfTable(ground, SetFunction(m, raw)));
  return BrMcResult{std::move(repaired), std::move(raw), std::move(se)};
}

Scalar hr_bivariate_neg_log_cdf(Scalar gamma, Scalar x1, Scalar x2) {
  if (std::isnan(gamma) || gamma < 0.0) {
    throw std::invalid_argument("hr_bivariate_neg_log_cdf: gamma must be >= 0");
  }
  if (!(x1 > 0.0) || !(x2 > 0.0)) {
    throw std::domain_error("hr_bivariate_neg_log_cdf: x1 and x2 must be positive");
  }
  if (gamma == 0.0) return 1.0 / std::min(x1, x2);                   // full dependence
  if (std::isinf(gamma)) return 1.0 / x1 + 1.0 / x2;                 // independence
  const Scalar root = std::sqrt(gamma);
  const Scalar log_ratio = std::log(x2 / x1);
  return std_normal_cdf(0.5 * root + log_ratio / root) / x1 +
         std_normal_cdf(0.5 * root - log_ratio / root) / x2;
}

Scalar ball_ell(const Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || x[i] < 0.0) {
      throw std::domain_error("ball_ell: coordinates must be nonnegative");
    }
  }
  return x.norm();
}

}  // namespace ecf
