#pragma once

#include <optional>
#include <vector>

#include "ecf/ground_set.hpp"
#include "ecf/types.hpp"

namespace ecf {

/// A total real-valued function on the subsets of an m-site ground set,
/// stored densely: values()[mask] is the value at that subset.
class SetFunction {
 public:
  explicit SetFunction(int num_sites, Scalar init = 0.0);
  SetFunction(int num_sites, Array values);

  int num_sites() const noexcept { return num_sites_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

  Scalar operator()(SubsetMask mask) const { return values_[static_cast<Eigen::Index>(mask)]; }
  void set(SubsetMask mask, Scalar value) { values_[static_cast<Eigen::Index>(mask)] = value; }

  const Array& values() const noexcept { return values_; }
  Array& values() noexcept { return values_; }

 private:
  int num_sites_;
  Array values_;
};

/// All subsets of the ground set in ascending bit order, 2^m masks
/// (or 2^m - 1 when the empty set is excluded).
std::vector<SubsetMask> enumerate_subsets(const GroundSet& ground, bool nonempty_only);
std::vector<SubsetMask> enumerate_subsets(int num_sites, bool nonempty_only);

/// Finite difference on the union semigroup: (delta(f, K))(L) = f(L) - f(L | K).
SetFunction delta(const SetFunction& f, SubsetMask k);

/// Alternating nested difference
///   (Delta_{K_1} ... Delta_{K_n} f)(K)
///     = sum over I subset of {1..n} of (-1)^|I| f(K | union_{i in I} K_i).
/// Requires at least one generator. Non-positive for every completely
/// alternating f.
Scalar nested_delta(const SetFunction& f, const std::vector<SubsetMask>& generators,
                    SubsetMask base);

struct AlternationWitness {
  std::vector<SubsetMask> generators;  // distinct singletons, ascending site order
  SubsetMask base = 0;
  Scalar value = 0.0;  // the offending nested difference (> tol)
};

struct AlternationReport {
  bool pass = true;
  std::optional<AlternationWitness> witness;
};

/// Direct complete-alternation check with singleton generators: evaluates
/// every nested difference of depth 1..max_depth over distinct singletons
/// at every base set, and reports the first violation in (depth, generator,
/// base) order. Singletons generate the semigroup, so passing at full depth
/// m is equivalent to tau-nonnegativity of the table.
AlternationReport check_completely_alternating(const SetFunction& f, int max_depth,
                                               Scalar tol = kValidateTol);

}  // namespace ecf
