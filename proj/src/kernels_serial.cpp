#include <vector>

#include "fks/kernels.hpp"
#include "kernel_formulas.hpp"

namespace fks::kernels::serial {

void rl_l1(std::span<const double> f, double h, double alpha, double scale,
           std::span<double> out) {
  const std::size_t n = f.size();
  std::vector<double> df(n - 1), b(n);
  for (std::size_t k = 0; k + 1 < n; ++k) df[k] = f[k + 1] - f[k];
  detail::l1_weights(alpha, n, b.data());
  const double pre = scale * std::pow(h, -alpha);
  out[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) out[j] = pre * detail::l1_point(df.data(), b.data(), j);
}

void derivatives(std::span<const double> f, double h, std::span<double> d1,
                 std::span<double> d2) {
  const std::size_t n = f.size();
  detail::edge_derivatives(f.data(), n, h, d1.data(), d2.data());
  for (std::size_t i = 2; i + 2 < n; ++i) detail::centre_derivatives(f.data(), i, h, d1.data(), d2.data());
}

void exact_correlation(const CorrelationInputs& in, double window_floor, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::exact_correlation_at(in, i, window_floor);
}

void frac_correlation(const CorrelationInputs& in, const FracCorrelationCoeffs& c,
                      double window_floor, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::frac_correlation_at(in, c, i, window_floor);
}

}  // namespace fks::kernels::serial
