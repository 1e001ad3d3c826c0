#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecf/types.hpp"

namespace ecf {

/// The finite window M of the index set: an ordered list of sites with
/// unique labels and, optionally, d-dimensional coordinates (used only by
/// the model ECFs that need geometry).
class GroundSet {
 public:
  /// Ground set with default labels s0, s1, ..., s{m-1}.
  explicit GroundSet(int size);

  explicit GroundSet(std::vector<std::string> labels,
                     std::optional<Matrix> coords = std::nullopt);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int site) const { return labels_.at(site); }

  bool has_coords() const noexcept { return coords_.has_value(); }
  /// Site coordinates, one row per site. Throws if absent.
  const Matrix& coords() const;
  int coord_dim() const { return static_cast<int>(coords().cols()); }

  SubsetMask all_sites() const noexcept { return full_mask(size()); }
  std::size_t subset_count() const noexcept { return std::size_t{1} << size(); }

  /// Index of the site with the given label; throws std::out_of_range if
  /// the label is unknown.
  int index_of(const std::string& label) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::optional<Matrix> coords_;
};

/// Labels s0..s{m-1} used when a ground set is given only by its size.
std::vector<std::string> default_labels(int size);

}  // namespace ecf
