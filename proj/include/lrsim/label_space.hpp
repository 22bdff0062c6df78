#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace lrsim {

// One classical label: contiguous index, optional momentum coordinate
// (units of p_beta scale chosen by the caller) and a positive weight. For
// discrete labels the weight is dimensionless; for quadrature grids it
// carries the dP volume of the continuous-label measure.
struct Label {
  int index = 0;
  std::optional<Eigen::Vector3d> coordinate;
  double weight = 1.0;
};

// Ordered finite family of labels. Continuous labels are always realized as
// finite quadrature grids with explicit weights; there is no continuum
// object anywhere in the library.
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<Label> labels);

  // count discrete labels, unit weights, no coordinates
  static LabelSpace discrete(int count);
  // grid with per-label momentum coordinates and measure weights
  static LabelSpace grid(const std::vector<Eigen::Vector3d>& coordinates,
                         const std::vector<double>& weights);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool has_coordinates() const { return has_coordinates_; }
  [[nodiscard]] const Label& label(std::size_t i) const { return labels_[i]; }
  [[nodiscard]] double weight(std::size_t i) const { return labels_[i].weight; }
  [[nodiscard]] const Eigen::Vector3d& coordinate(std::size_t i) const;
  [[nodiscard]] const std::vector<Label>& labels() const { return labels_; }

  // exact structural equality (indices, weights, coordinates bitwise)
  [[nodiscard]] bool same_as(const LabelSpace& other) const;

 private:
  std::vector<Label> labels_;
  bool has_coordinates_ = false;
};

}  // namespace lrsim
