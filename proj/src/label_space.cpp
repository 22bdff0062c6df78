#include "lrsim/label_space.hpp"

#include "lrsim/errors.hpp"

namespace lrsim {

LabelSpace::LabelSpace(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw StructuralError("LabelSpace: no labels");
  std::size_t with_coord = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].index != static_cast<int>(i))
      throw StructuralError("LabelSpace: indices must be contiguous from 0");
    if (!(labels_[i].weight > 0.0))
      throw StructuralError("LabelSpace: weights must be > 0");
    if (labels_[i].coordinate) ++with_coord;
  }
  if (with_coord != 0 && with_coord != labels_.size())
    throw StructuralError("LabelSpace: either all labels carry coordinates or none");
  has_coordinates_ = with_coord == labels_.size();
}

LabelSpace LabelSpace::discrete(int count) {
  if (count < 1) throw StructuralError("LabelSpace::discrete: count must be >= 1");
  std::vector<Label> labels(count);
  for (int i = 0; i < count; ++i) labels[i] = Label{i, std::nullopt, 1.0};
  return LabelSpace(std::move(labels));
}

LabelSpace LabelSpace::grid(const std::vector<Eigen::Vector3d>& coordinates,
                            const std::vector<double>& weights) {
  if (coordinates.size() != weights.size())
    throw StructuralError("LabelSpace::grid: coordinate/weight size mismatch");
  std::vector<Label> labels(coordinates.size());
  for (std::size_t i = 0; i < coordinates.size(); ++i)
    labels[i] = Label{static_cast<int>(i), coordinates[i], weights[i]};
  return LabelSpace(std::move(labels));
}

const Eigen::Vector3d& LabelSpace::coordinate(std::size_t i) const {
  if (!has_coordinates_)
    throw StructuralError("LabelSpace: labels carry no coordinates");
  return *labels_[i].coordinate;
}

bool LabelSpace::same_as(const LabelSpace& other) const {
  if (labels_.size() != other.labels_.size()) return false;
  if (has_coordinates_ != other.has_coordinates_) return false;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].weight != other.labels_[i].weight) return false;
    if (has_coordinates_ &&
        labels_[i].coordinate.value() != other.labels_[i].coordinate.value())
      return false;
  }
  return true;
}

}  // namespace lrsim
