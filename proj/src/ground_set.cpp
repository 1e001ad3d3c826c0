#include "ecf/ground_set.hpp"

#include <unordered_set>

namespace ecf {

std::vector<std::string> default_labels(int size) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) labels.push_back("s" + std::to_string(i));
  return labels;
}

GroundSet::GroundSet(int size) : GroundSet(default_labels(size)) {}

GroundSet::GroundSet(std::vector<std::string> labels, std::optional<Matrix> coords)
    : labels_(std::move(labels)), coords_(std::move(coords)) {
  const auto m = labels_.size();
  if (m < 1 || m > static_cast<std::size_t>(kMaxSites)) {
    throw std::invalid_argument("GroundSet: size must be in [1, " +
                                std::to_string(kMaxSites) + "], got " + std::to_string(m));
  }
  std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != m) throw std::invalid_argument("GroundSet: labels must be unique");
  if (coords_ && coords_->rows() != static_cast<Eigen::Index>(m)) {
    throw std::invalid_argument("GroundSet: coords must have one row per site");
  }
}

const Matrix& GroundSet::coords() const {
  if (!coords_) throw std::logic_error("GroundSet: no coordinates attached");
  return *coords_;
}

int GroundSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  throw std::out_of_range("GroundSet: unknown label '" + label + "'");
}

}  // namespace ecf
