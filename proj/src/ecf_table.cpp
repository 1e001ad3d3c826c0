#include "ecf/ecf_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ecf/rng.hpp"

namespace ecf {

EcfTable::EcfTable(GroundSet g, SetFunction t) : ground(std::move(g)), theta(std::move(t)) {
  if (theta.num_sites() != ground.size()) {
    throw std::invalid_argument("EcfTable: table size does not match ground set");
  }
}

TauTable::TauTable(GroundSet g, SetFunction t) : ground(std::move(g)), tau(std::move(t)) {
  if (tau.num_sites() != ground.size()) {
    throw std::invalid_argument("TauTable: table size does not match ground set");
  }
}

DiscreteSpectralMeasure::DiscreteSpectralMeasure(GroundSet ground, Matrix atoms, Scalar tol)
    : ground_(std::move(ground)) {
  if (atoms.rows() != ground_.size()) {
    throw std::invalid_argument("DiscreteSpectralMeasure: one row per site required");
  }
  if (atoms.cols() < 1) throw std::invalid_argument("DiscreteSpectralMeasure: need at least one atom");
  if ((atoms.array() < 0.0).any()) {
    throw std::invalid_argument("DiscreteSpectralMeasure: negative coefficient");
  }
  // Drop all-zero columns; they carry no spectral mass.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    if (atoms.col(j).maxCoeff() > 0.0) keep.push_back(j);
  }
  if (keep.empty()) throw std::invalid_argument("DiscreteSpectralMeasure: all atoms are zero");
  atoms_.resize(atoms.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) atoms_.col(static_cast<Eigen::Index>(j)) = atoms.col(keep[j]);
  for (Eigen::Index i = 0; i < atoms_.rows(); ++i) {
    const Scalar row_sum = atoms_.row(i).sum();
    if (std::abs(row_sum - 1.0) > tol) {
      throw std::invalid_argument("DiscreteSpectralMeasure: row " + std::to_string(i) +
                                  " sums to " + std::to_string(row_sum) + ", expected 1");
    }
  }
}

namespace detail {

Scalar pairwise_sum(const Scalar* buf, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    Scalar s = buf[0];
    for (std::size_t i = 1; i < n; ++i) s += buf[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(buf, half) + pairwise_sum(buf + half, n - half);
}

SetFunction tau_from_theta_unchecked(const SetFunction& theta) {
  const int m = theta.num_sites();
  const SubsetMask full = full_mask(m);
  SetFunction tau(m, 0.0);
  std::vector<Scalar> terms;
  terms.reserve(std::size_t{1} << m);
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    const SubsetMask rest = full & ~subset;
    terms.clear();
    // tau^M_L = sum over I subset of L of (-1)^{|I|+1} theta((M\L) | I)
    for_each_submask(subset, [&](SubsetMask inner) {
      const Scalar term = theta(rest | inner);
      terms.push_back((subset_size(inner) % 2 == 1) ? term : -term);
    });
    tau.set(subset, pairwise_sum(terms.data(), terms.size()));
  }
  return tau;
}

}  // namespace detail

namespace {

void require_normalized(const EcfTable& ecf, Scalar tol, const char* op) {
  if (std::abs(ecf.theta(0)) > tol) {
    throw std::invalid_argument(std::string(op) + ": theta(empty) must be 0");
  }
  for (int i = 0; i < ecf.ground.size(); ++i) {
    if (std::abs(ecf.theta(singleton_mask(i)) - 1.0) > tol) {
      throw std::invalid_argument(std::string(op) + ": theta({" + ecf.ground.label(i) +
                                  "}) must be 1");
    }
  }
}

void require_tau_invariants(const TauTable& tau, Scalar tol, const char* op) {
  const int m = tau.ground.size();
  const SubsetMask full = full_mask(m);
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    if (tau(subset) < -tol) {
      throw std::invalid_argument(std::string(op) + ": negative tau coefficient");
    }
  }
  for (int i = 0; i < m; ++i) {
    Scalar row = 0.0;
    for (SubsetMask subset = 1; subset <= full; ++subset) {
      if (subset_contains(subset, i)) row += tau(subset);
    }
    if (std::abs(row - 1.0) > tol) {
      throw std::invalid_argument(std::string(op) + ": tau row sum for site " +
                                  tau.ground.label(i) + " is not 1");
    }
  }
}

// Distributes the bits of a compact sub-mask onto the set bits of window.
SubsetMask expand_mask(SubsetMask compact, SubsetMask window, int num_sites) {
  SubsetMask out = 0;
  int bit = 0;
  for (int site = 0; site < num_sites; ++site) {
    if (!subset_contains(window, site)) continue;
    if (subset_contains(compact, bit)) out |= singleton_mask(site);
    ++bit;
  }
  return out;
}

GroundSet sub_ground(const GroundSet& ground, SubsetMask window) {
  std::vector<std::string> labels;
  for (int i = 0; i < ground.size(); ++i) {
    if (subset_contains(window, i)) labels.push_back(ground.label(i));
  }
  if (!ground.has_coords()) return GroundSet(std::move(labels));
  Matrix coords(static_cast<Eigen::Index>(labels.size()), ground.coords().cols());
  Eigen::Index row = 0;
  for (int i = 0; i < ground.size(); ++i) {
    if (subset_contains(window, i)) coords.row(row++) = ground.coords().row(i);
  }
  return GroundSet(std::move(labels), std::move(coords));
}

}  // namespace

TauTable compute_tau(const EcfTable& ecf, Scalar tol) {
  require_normalized(ecf, tol, "compute_tau");
  return TauTable(ecf.ground, detail::tau_from_theta_unchecked(ecf.theta));
}

EcfValidation validate_ecf(const EcfTable& ecf, Scalar tol) {
  const int m = ecf.ground.size();
  const SubsetMask full = full_mask(m);
  EcfValidation result;

  bool normalized = true;
  if (std::abs(ecf.theta(0)) > tol) {
    normalized = false;
    result.violations.push_back({"theta(empty) != 0", 0, std::abs(ecf.theta(0))});
  }
  for (int i = 0; i < m; ++i) {
    const Scalar v = ecf.theta(singleton_mask(i));
    if (std::abs(v - 1.0) > tol) {
      normalized = false;
      result.violations.push_back({"theta(singleton) != 1", singleton_mask(i), std::abs(v - 1.0)});
    }
  }
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    const Scalar v = ecf.theta(subset);
    if (v < 1.0 - tol) result.violations.push_back({"below 1", subset, 1.0 - v});
    const Scalar size = static_cast<Scalar>(subset_size(subset));
    if (v > size + tol) result.violations.push_back({"exceeds |A|", subset, v - size});
  }
  // Monotonicity on covering pairs (depth-1 alternation); implied by tau
  // nonnegativity but reported separately for readable diagnostics.
  for (SubsetMask subset = 0; subset <= full; ++subset) {
    for (int i = 0; i < m; ++i) {
      if (subset_contains(subset, i)) continue;
      const SubsetMask super = subset | singleton_mask(i);
      if (ecf.theta(subset) > ecf.theta(super) + tol) {
        result.violations.push_back({"not monotone", super, ecf.theta(subset) - ecf.theta(super)});
      }
    }
  }

  const SetFunction tau = detail::tau_from_theta_unchecked(ecf.theta);
  result.min_tau = tau(1);
  result.min_tau_subset = 1;
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    if (tau(subset) < result.min_tau) {
      result.min_tau = tau(subset);
      result.min_tau_subset = subset;
    }
    if (tau(subset) < -tol) {
      result.violations.push_back({"negative tau", subset, -tau(subset)});
    }
  }
  result.pass = normalized && result.min_tau >= -tol;
  return result;
}

EcfTable ecf_from_tau(const TauTable& tau, Scalar tol) {
  require_tau_invariants(tau, tol, "ecf_from_tau");
  const int m = tau.ground.size();
  const SubsetMask full = full_mask(m);
  // Subset-sum (zeta) transform: acc[B] = sum of tau_L over L subset of B.
  Array acc = tau.tau.values();
  acc[0] = 0.0;
  for (int i = 0; i < m; ++i) {
    const SubsetMask bit = singleton_mask(i);
    for (SubsetMask mask = 0; mask <= full; ++mask) {
      if (mask & bit) acc[mask] += acc[mask ^ bit];
    }
  }
  // theta(A) = sum over L meeting A = S(M) - S(M \ A).
  const Scalar total = acc[full];
  SetFunction theta(m, 0.0);
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    theta.set(subset, total - acc[full & ~subset]);
  }
  return EcfTable(tau.ground, std::move(theta));
}

TauTable marginalize_tau(const TauTable& tau, SubsetMask window) {
  const int m = tau.ground.size();
  const SubsetMask full = full_mask(m);
  if (window == 0) throw std::invalid_argument("marginalize_tau: window must be nonempty");
  if ((window & ~full) != 0) throw std::invalid_argument("marginalize_tau: window outside ground set");
  const SubsetMask outside = full & ~window;
  const int sub_m = subset_size(window);
  SetFunction sub(sub_m, 0.0);
  const SubsetMask sub_full = full_mask(sub_m);
  for (SubsetMask compact = 1; compact <= sub_full; ++compact) {
    const SubsetMask k = expand_mask(compact, window, m);
    Scalar sum = 0.0;
    for_each_submask(outside, [&](SubsetMask j) { sum += tau(k | j); });
    sub.set(compact, sum);
  }
  return TauTable(sub_ground(tau.ground, window), std::move(sub));
}

EcfTable restrict_ecf(const EcfTable& ecf, SubsetMask window) {
  const int m = ecf.ground.size();
  const SubsetMask full = full_mask(m);
  if (window == 0) throw std::invalid_argument("restrict_ecf: window must be nonempty");
  if ((window & ~full) != 0) throw std::invalid_argument("restrict_ecf: window outside ground set");
  const int sub_m = subset_size(window);
  SetFunction sub(sub_m, 0.0);
  const SubsetMask sub_full = full_mask(sub_m);
  for (SubsetMask compact = 0; compact <= sub_full; ++compact) {
    sub.set(compact, ecf.theta(expand_mask(compact, window, m)));
  }
  return EcfTable(sub_ground(ecf.ground, window), std::move(sub));
}

EcfTable ecf_from_spectral_measure(const DiscreteSpectralMeasure& sm) {
  const int m = sm.num_sites();
  const SubsetMask full = full_mask(m);
  SetFunction theta(m, 0.0);
  Array col_max(Eigen::Index{1} << m);
  for (int j = 0; j < sm.num_atoms(); ++j) {
    col_max[0] = 0.0;
    for (SubsetMask subset = 1; subset <= full; ++subset) {
      const int site = lowest_site(subset);
      col_max[subset] = std::max(col_max[subset & (subset - 1)], sm.atoms()(site, j));
    }
    for (SubsetMask subset = 1; subset <= full; ++subset) {
      theta.set(subset, theta(subset) + col_max[subset]);
    }
  }
  return EcfTable(sm.ground(), std::move(theta));
}

DiscreteSpectralMeasure random_spectral_measure(int num_sites, int num_atoms,
                                                std::uint64_t seed) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw std::invalid_argument("random_spectral_measure: num_sites out of range");
  }
  if (num_atoms < 1) throw std::invalid_argument("random_spectral_measure: need at least one atom");
  CounterRng rng(seed, 0);
  Matrix atoms(num_sites, num_atoms);
  for (int i = 0; i < num_sites; ++i) {
    for (int j = 0; j < num_atoms; ++j) {
      atoms(i, j) = rng.uniform(static_cast<std::uint64_t>(i) * num_atoms + j);
    }
  }
  for (int i = 0; i < num_sites; ++i) atoms.row(i) /= atoms.row(i).sum();
  return DiscreteSpectralMeasure(GroundSet(num_sites), std::move(atoms));
}

EcfTable random_valid_ecf(int num_sites, int num_atoms, std::uint64_t seed) {
  return ecf_from_spectral_measure(random_spectral_measure(num_sites, num_atoms, seed));
}

EcfTable project_to_valid_ecf(const EcfTable& ecf) {
  const int m = ecf.ground.size();
  if (m > 12) throw std::invalid_argument("project_to_valid_ecf: supported for m <= 12");
  const SubsetMask full = full_mask(m);

  // Pin the normalization, then take the least monotone majorant; strict
  // subsets of a mask are numerically smaller, so one ascending pass fixes
  // every covering pair.
  SetFunction repaired = ecf.theta;
  repaired.set(0, 0.0);
  for (int i = 0; i < m; ++i) repaired.set(singleton_mask(i), 1.0);
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    Scalar best = repaired(subset);
    for (int i = 0; i < m; ++i) {
      if (subset_contains(subset, i) && subset != singleton_mask(i)) {
        best = std::max(best, repaired(subset & ~singleton_mask(i)));
      }
    }
    repaired.set(subset, best);
  }

  const SetFunction tau = detail::tau_from_theta_unchecked(repaired);
  std::vector<SubsetMask> atoms;
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    if (tau(subset) > 0.0) atoms.push_back(subset);
  }
  if (atoms.empty()) throw std::invalid_argument("project_to_valid_ecf: no positive spectral mass");

  Matrix coeff = Matrix::Zero(m, static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    for (int i = 0; i < m; ++i) {
      if (subset_contains(atoms[j], i)) coeff(i, static_cast<Eigen::Index>(j)) = tau(atoms[j]);
    }
  }
  for (int i = 0; i < m; ++i) {
    const Scalar row_sum = coeff.row(i).sum();
    if (row_sum < 0.5) {
      throw std::invalid_argument("project_to_valid_ecf: input too far from a valid ECF");
    }
    coeff.row(i) /= row_sum;
  }
  return ecf_from_spectral_measure(DiscreteSpectralMeasure(ecf.ground, std::move(coeff)));
}

}  // namespace ecf
