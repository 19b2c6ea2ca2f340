#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fks/exec.hpp"

namespace fks {

/// Uniform grid on [x_min, x_max] with an odd point count, so x = 0 is a node.
class SpatialGrid {
 public:
  SpatialGrid() : SpatialGrid(-8.0, 8.0, 801) {}
  SpatialGrid(double x_min, double x_max, std::size_t n_points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * h_; }
  std::size_t centre_index() const noexcept { return (n_ - 1) / 2; }
  std::vector<double> points() const;

  /// Same extent, twice the resolution (2n - 1 points).
  SpatialGrid refined() const { return {x_min_, x_max_, 2 * n_ - 1}; }

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double h_;
};

struct Derivatives {
  std::vector<double> d1;
  std::vector<double> d2;
};

/// First and second derivatives of grid samples (see kernels::derivatives for stencils).
Derivatives spatial_derivatives(std::span<const double> f, const SpatialGrid& grid,
                                kernels::Exec exec = kernels::Exec::parallel);

double trapezoid(std::span<const double> f, double h);

/// F_0 = 0, F_i = F_{i-1} + h (f_{i-1} + f_i) / 2.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double h);

}  // namespace fks
