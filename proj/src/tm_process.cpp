#include "ecf/tm_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ecf/parallel.hpp"
#include "ecf/rng.hpp"

namespace ecf {

TmProcess::TmProcess(TauTable tau, Scalar tol)
    : tau_(std::move(tau)), theta_(ecf_from_tau(tau_, tol)) {
  const SubsetMask full = tau_.ground.all_sites();
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    if (tau_(subset) > kAtomSkipTol) {
      atom_masks_.push_back(subset);
      atom_weights_.push_back(tau_(subset));
    }
  }
}

TmProcess tm_from_ecf(const EcfTable& ecf, Scalar tol) {
  const EcfValidation check = validate_ecf(ecf, tol);
  if (!check.pass) {
    std::string msg = "tm_from_ecf: input is not a valid ECF";
    if (!check.violations.empty()) {
      msg += " (" + check.violations.front().constraint + ", magnitude " +
             std::to_string(check.violations.front().magnitude) + ")";
    }
    throw std::invalid_argument(msg);
  }
  return TmProcess(compute_tau(ecf, tol), tol);
}

Scalar neg_log_cdf(const TmProcess& process, const Vector& x) {
  const int m = process.num_sites();
  if (x.size() != m) throw std::invalid_argument("neg_log_cdf: point has wrong dimension");
  Vector recip(m);
  for (int i = 0; i < m; ++i) {
    if (std::isnan(x[i]) || x[i] <= 0.0) {
      throw std::domain_error("neg_log_cdf: coordinates must be positive");
    }
    recip[i] = 1.0 / x[i];  // +inf maps to 0 and drops the site
  }
  const SubsetMask full = process.ground().all_sites();
  Scalar sum = 0.0;
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    const Scalar w = process.tau()(subset);
    if (w == 0.0) continue;
    Scalar vmax = 0.0;
    for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
      vmax = std::max(vmax, recip[lowest_site(rest)]);
    }
    sum += w * vmax;
  }
  return sum;
}

Scalar bivariate_neg_log_cdf(Scalar eta, Scalar x, Scalar y) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("bivariate_neg_log_cdf: eta must be in [0, 1]");
  }
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::domain_error("bivariate_neg_log_cdf: x and y must be positive");
  }
  return eta / std::max(x, y) + 1.0 / std::min(x, y);
}

Scalar stable_tail_dependence(const TmProcess& process, const Vector& x) {
  const int m = process.num_sites();
  if (x.size() != m) throw std::invalid_argument("stable_tail_dependence: point has wrong dimension");
  bool any_positive = false;
  for (int i = 0; i < m; ++i) {
    if (std::isnan(x[i]) || x[i] < 0.0) {
      throw std::domain_error("stable_tail_dependence: coordinates must be nonnegative");
    }
    any_positive = any_positive || x[i] > 0.0;
  }
  if (!any_positive) throw std::domain_error("stable_tail_dependence: x must be nonzero");
  const SubsetMask full = process.ground().all_sites();
  Scalar sum = 0.0;
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    const Scalar w = process.tau()(subset);
    if (w == 0.0) continue;
    Scalar vmax = 0.0;
    for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
      vmax = std::max(vmax, x[lowest_site(rest)]);
    }
    sum += w * vmax;
  }
  return sum;
}

Scalar maxlinear_neg_log_cdf(const DiscreteSpectralMeasure& sm, const Vector& x) {
  const int m = sm.num_sites();
  if (x.size() != m) throw std::invalid_argument("maxlinear_neg_log_cdf: point has wrong dimension");
  Vector recip(m);
  for (int i = 0; i < m; ++i) {
    if (std::isnan(x[i]) || x[i] <= 0.0) {
      throw std::domain_error("maxlinear_neg_log_cdf: coordinates must be positive");
    }
    recip[i] = 1.0 / x[i];
  }
  Scalar sum = 0.0;
  for (int j = 0; j < sm.num_atoms(); ++j) {
    Scalar vmax = 0.0;
    for (int i = 0; i < m; ++i) vmax = std::max(vmax, sm.atoms()(i, j) * recip[i]);
    sum += vmax;
  }
  return sum;
}

SampleBatch simulate_tm(const TmProcess& process, int n, std::uint64_t seed, int threads) {
  if (n < 1) throw std::invalid_argument("simulate_tm: n must be >= 1");
  const int m = process.num_sites();
  const auto& masks = process.atom_masks();
  const auto& weights = process.atom_weights();
  SampleBatch batch{process.ground(), Matrix(n, m), seed};
  parallel_for(0, n, threads, [&](std::int64_t k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    auto row = batch.values.row(static_cast<Eigen::Index>(k));
    row.setZero();
    for (std::size_t a = 0; a < masks.size(); ++a) {
      const Scalar z = weights[a] * rng.frechet(a);
      for (SubsetMask rest = masks[a]; rest != 0; rest &= rest - 1) {
        const int site = lowest_site(rest);
        row[site] = std::max(row[site], z);
      }
    }
  });
  return batch;
}

SampleBatch simulate_maxlinear(const DiscreteSpectralMeasure& sm, int n, std::uint64_t seed,
                               int threads) {
  if (n < 1) throw std::invalid_argument("simulate_maxlinear: n must be >= 1");
  const int m = sm.num_sites();
  const int q = sm.num_atoms();
  SampleBatch batch{sm.ground(), Matrix(n, m), seed};
  parallel_for(0, n, threads, [&](std::int64_t k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    auto row = batch.values.row(static_cast<Eigen::Index>(k));
    row.setZero();
    for (int j = 0; j < q; ++j) {
      const Scalar z = rng.frechet(static_cast<std::uint64_t>(j));
      for (int i = 0; i < m; ++i) row[i] = std::max(row[i], sm.atoms()(i, j) * z);
    }
  });
  return batch;
}

EcfEstimate empirical_ecf(const SampleBatch& batch, SubsetMask subset) {
  if (subset == 0) throw std::invalid_argument("empirical_ecf: subset must be nonempty");
  const SubsetMask full = batch.ground.all_sites();
  if ((subset & ~full) != 0) throw std::invalid_argument("empirical_ecf: subset outside ground set");
  const int n = batch.n();
  if (n < 2) throw std::invalid_argument("empirical_ecf: need at least 2 replicates");
  Scalar sum = 0.0;
  for (int k = 0; k < n; ++k) {
    Scalar vmax = 0.0;
    for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
      vmax = std::max(vmax, batch.values(k, lowest_site(rest)));
    }
    sum += 1.0 / vmax;
  }
  EcfEstimate est;
  est.value = static_cast<Scalar>(n) / sum;
  est.std_error = est.value / std::sqrt(static_cast<Scalar>(n));
  return est;
}

ContinuityBound continuity_bound(Scalar eta, Scalar eps) {
  if (!(eta >= 0.0)) throw std::invalid_argument("continuity_bound: eta must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("continuity_bound: eps must be > 0");
  return {2.0 * (1.0 - std::exp(-eta / eps)), 2.0 * eta / eps};
}

}  // namespace ecf
