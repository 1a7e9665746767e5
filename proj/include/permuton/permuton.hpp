#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "permuton/permutation.hpp"
#include "permuton/walks.hpp"

namespace permuton {

/// k x k mass grid on the unit square. Row indexes the vertical (value) axis,
/// column the horizontal (position) axis; both 0-based here, 1-based in CSV.
class GridMeasure {
 public:
  explicit GridMeasure(std::size_t k);

  std::size_t resolution() const { return k_; }
  double mass(std::size_t row, std::size_t col) const { return mass_[row * k_ + col]; }
  double& mass(std::size_t row, std::size_t col) { return mass_[row * k_ + col]; }

  double total() const;
  std::vector<double> row_sums() const;
  std::vector<double> column_sums() const;
  double max_mass() const;

 private:
  std::size_t k_;
  std::vector<double> mass_;
};

/// Evaluation times paired with the sampled level function.
struct PhiCurve {
  std::vector<double> t;
  std::vector<double> phi;
};

/// phi(j) = (#{k < j : z_k(u_j) < 0} + #{k >= j : z_j(u_k) >= 0}) / m.
std::vector<double> phi_from_walks(const WalkFamily& family);
PhiCurve phi_curve(const WalkFamily& family);

/// Rank of each phi value, ties broken by index.
Permutation permutation_from_phi(std::span<const double> phi);

/// Exact area overlap of the permutation diagram with the k x k grid.
GridMeasure permuton_from_permutation(const Permutation& sigma, std::size_t k);

/// Mass 1/m at cell (ceil(t_j k), ceil(phi_j k)), clamped to the grid.
GridMeasure empirical_permuton(const PhiCurve& curve, std::size_t k);

/// Largest absolute difference between lower-left corner CDFs.
double grid_distance(const GridMeasure& a, const GridMeasure& b);

enum class PairOrder { before, after, non_generic };

/// Orientation of x relative to y (x < y) under the excursion order: decided
/// by the sign at the unique minimiser of e on [x, y]. Pairs whose minimum is
/// tied or sits at an endpoint are reported as non_generic.
std::vector<PairOrder> separable_order(std::span<const double> e, const SignAssignment& signs,
                                       std::span<const std::pair<std::size_t, std::size_t>> pairs);

}  // namespace permuton
