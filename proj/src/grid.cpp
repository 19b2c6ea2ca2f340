#include "fks/grid.hpp"

#include <string>

#include "fks/error.hpp"
#include "fks/kernels.hpp"

namespace fks {

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points), h_(0.0) {
  if (!(x_min < 0.0 && 0.0 < x_max)) throw DomainError("grid must satisfy x_min < 0 < x_max");
  if (n_points < 3 || n_points % 2 == 0) {
    throw DomainError("grid point count must be odd and >= 3, got " + std::to_string(n_points));
  }
  h_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

std::vector<double> SpatialGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

Derivatives spatial_derivatives(std::span<const double> f, const SpatialGrid& grid,
                                kernels::Exec exec) {
  if (f.size() != grid.size()) throw GridMismatch("samples do not match grid size");
  Derivatives d{std::vector<double>(f.size()), std::vector<double>(f.size())};
  kernels::derivatives(f, grid.spacing(), d.d1, d.d2, exec);
  return d;
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  return out;
}

}  // namespace fks
