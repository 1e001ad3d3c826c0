#include "ecf/set_function.hpp"

#include <stdexcept>
#include <string>

namespace ecf {

SetFunction::SetFunction(int num_sites, Scalar init) : num_sites_(num_sites) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw std::invalid_argument("SetFunction: num_sites out of range");
  }
  values_ = Array::Constant(Eigen::Index{1} << num_sites, init);
}

SetFunction::SetFunction(int num_sites, Array values) : num_sites_(num_sites), values_(std::move(values)) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw std::invalid_argument("SetFunction: num_sites out of range");
  }
  if (values_.size() != (Eigen::Index{1} << num_sites)) {
    throw std::invalid_argument("SetFunction: expected 2^m values, got " +
                                std::to_string(values_.size()));
  }
}

std::vector<SubsetMask> enumerate_subsets(int num_sites, bool nonempty_only) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw std::invalid_argument("enumerate_subsets: num_sites out of range");
  }
  const SubsetMask full = full_mask(num_sites);
  std::vector<SubsetMask> out;
  out.reserve((std::size_t{1} << num_sites) - (nonempty_only ? 1 : 0));
  for (SubsetMask mask = nonempty_only ? 1u : 0u; mask <= full; ++mask) out.push_back(mask);
  return out;
}

std::vector<SubsetMask> enumerate_subsets(const GroundSet& ground, bool nonempty_only) {
  return enumerate_subsets(ground.size(), nonempty_only);
}

SetFunction delta(const SetFunction& f, SubsetMask k) {
  SetFunction out(f.num_sites());
  const SubsetMask full = full_mask(f.num_sites());
  if ((k & ~full) != 0) throw std::invalid_argument("delta: mask outside ground set");
  for (SubsetMask mask = 0; mask <= full; ++mask) {
    out.set(mask, f(mask) - f(mask | k));
  }
  return out;
}

Scalar nested_delta(const SetFunction& f, const std::vector<SubsetMask>& generators,
                    SubsetMask base) {
  if (generators.empty()) throw std::invalid_argument("nested_delta: need at least one generator");
  const SubsetMask full = full_mask(f.num_sites());
  if ((base & ~full) != 0) throw std::invalid_argument("nested_delta: base outside ground set");
  const std::size_t n = generators.size();
  if (n > 31) throw std::invalid_argument("nested_delta: too many generators");
  Scalar sum = 0.0;
  for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << n); ++pick) {
    SubsetMask arg = base;
    for (std::size_t i = 0; i < n; ++i) {
      if ((pick >> i) & 1u) arg |= generators[i];
    }
    if ((arg & ~full) != 0) throw std::invalid_argument("nested_delta: generator outside ground set");
    sum += (std::popcount(pick) % 2 == 0) ? f(arg) : -f(arg);
  }
  return sum;
}

namespace {

// Depth-first sweep over ascending combinations of distinct singleton
// generators; returns false once a violation has been recorded.
bool sweep(const SetFunction& f, std::vector<SubsetMask>& generators, int next_site,
           int remaining_depth, Scalar tol, AlternationReport& report) {
  const int m = f.num_sites();
  if (!generators.empty()) {
    const SubsetMask full = full_mask(m);
    for (SubsetMask base = 0; base <= full; ++base) {
      const Scalar value = nested_delta(f, generators, base);
      if (value > tol) {
        report.pass = false;
        report.witness = AlternationWitness{generators, base, value};
        return false;
      }
    }
  }
  if (remaining_depth == 0) return true;
  for (int site = next_site; site < m; ++site) {
    generators.push_back(singleton_mask(site));
    const bool keep_going = sweep(f, generators, site + 1, remaining_depth - 1, tol, report);
    generators.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

AlternationReport check_completely_alternating(const SetFunction& f, int max_depth, Scalar tol) {
  if (max_depth < 1 || max_depth > f.num_sites()) {
    throw std::invalid_argument("check_completely_alternating: depth must be in [1, m]");
  }
  AlternationReport report;
  std::vector<SubsetMask> generators;
  sweep(f, generators, 0, max_depth, tol, report);
  return report;
}

}  // namespace ecf
