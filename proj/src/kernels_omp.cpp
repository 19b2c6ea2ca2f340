#include <omp.h>

#include <vector>

#include "fks/kernels.hpp"
#include "kernel_formulas.hpp"

namespace fks::kernels::omp {

void rl_l1(std::span<const double> f, double h, double alpha, double scale,
           std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
  std::vector<double> df(n - 1), b(n);
  for (std::ptrdiff_t k = 0; k + 1 < n; ++k) df[k] = f[k + 1] - f[k];
  detail::l1_weights(alpha, static_cast<std::size_t>(n), b.data());
  const double pre = scale * std::pow(h, -alpha);
  out[0] = 0.0;
  // work grows with j
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t j = 1; j < n; ++j) {
    out[j] = pre * detail::l1_point(df.data(), b.data(), static_cast<std::size_t>(j));
  }
}

void derivatives(std::span<const double> f, double h, std::span<double> d1,
                 std::span<double> d2) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
  detail::edge_derivatives(f.data(), f.size(), h, d1.data(), d2.data());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 2; i < n - 2; ++i) {
    detail::centre_derivatives(f.data(), static_cast<std::size_t>(i), h, d1.data(), d2.data());
  }
}

void exact_correlation(const CorrelationInputs& in, double window_floor, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = detail::exact_correlation_at(in, static_cast<std::size_t>(i), window_floor);
  }
}

void frac_correlation(const CorrelationInputs& in, const FracCorrelationCoeffs& c,
                      double window_floor, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = detail::frac_correlation_at(in, c, static_cast<std::size_t>(i), window_floor);
  }
}

}  // namespace fks::kernels::omp
