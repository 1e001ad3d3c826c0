#pragma once

#include <Eigen/Core>

#include <bit>
#include <cstdint>

namespace ecf {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Array = Eigen::ArrayXd;

/// A finite subset of the ground set encoded as a bit pattern: bit i marks
/// membership of site i. Mask 0 is the empty set, the neutral element of
/// the union semigroup.
using SubsetMask = std::uint32_t;

/// Hard cap on ground-set size; every table is dense with 2^m entries.
inline constexpr int kMaxSites = 20;

/// Absolute tolerance separating genuine constraint violations from
/// inclusion-exclusion roundoff in double precision (tol_validate).
inline constexpr Scalar kValidateTol = 1e-9;

/// Tolerance for geometric predicates: halfspace membership, vertex dedup.
inline constexpr Scalar kGeometryTol = 1e-9;

/// Spectral atoms with weight at or below this are skipped in simulation.
inline constexpr Scalar kAtomSkipTol = 1e-15;

inline int subset_size(SubsetMask mask) noexcept { return std::popcount(mask); }

inline bool subset_contains(SubsetMask mask, int site) noexcept {
  return (mask >> site) & 1u;
}

inline bool is_subset_of(SubsetMask inner, SubsetMask outer) noexcept {
  return (inner & ~outer) == 0u;
}

inline SubsetMask full_mask(int num_sites) noexcept {
  return num_sites >= 32 ? ~SubsetMask{0} : (SubsetMask{1} << num_sites) - 1u;
}

inline SubsetMask singleton_mask(int site) noexcept { return SubsetMask{1} << site; }

/// Index of the lowest set bit; undefined for the empty mask.
inline int lowest_site(SubsetMask mask) noexcept { return std::countr_zero(mask); }

/// Applies fn to every subset of `mask`, including the empty set and `mask`
/// itself, in decreasing numeric order of the submask followed by 0.
template <typename Fn>
void for_each_submask(SubsetMask mask, Fn&& fn) {
  SubsetMask sub = mask;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

}  // namespace ecf
