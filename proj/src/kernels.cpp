#include "fks/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "fks/error.hpp"

namespace fks::kernels {

int requested_threads() {
  const char* env = std::getenv("FKS_NUM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

void configure_threads() {
  if (const int n = requested_threads(); n > 0) omp_set_num_threads(n);
}

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw GridMismatch(std::string(what) + ": input/output size mismatch");
}

void require_inputs(const CorrelationInputs& in, std::size_t n, bool needs_theta) {
  const bool ok = in.n.size() == n && in.dn_dx.size() == n && in.dtheta_dt.size() == n &&
                  in.v_ext.size() == n &&
                  (needs_theta ? in.theta.size() == n
                               : in.d2n_dx2.size() == n && in.dtheta_dx.size() == n);
  if (!ok) throw MissingField("correlation kernel: input field missing or of wrong length");
}

}  // namespace

void rl_l1(std::span<const double> f, double h, double alpha, double scale,
           std::span<double> out, Exec exec) {
  require_same_size(f.size(), out.size(), "rl_l1");
  if (f.empty()) return;
  exec == Exec::serial ? serial::rl_l1(f, h, alpha, scale, out) : omp::rl_l1(f, h, alpha, scale, out);
}

void derivatives(std::span<const double> f, double h, std::span<double> d1,
                 std::span<double> d2, Exec exec) {
  require_same_size(f.size(), d1.size(), "derivatives");
  require_same_size(f.size(), d2.size(), "derivatives");
  if (f.size() < 5) throw DomainError("derivatives: need at least 5 samples");
  exec == Exec::serial ? serial::derivatives(f, h, d1, d2) : omp::derivatives(f, h, d1, d2);
}

void exact_correlation(const CorrelationInputs& in, double window_floor,
                       std::span<double> out, Exec exec) {
  require_inputs(in, out.size(), false);
  exec == Exec::serial ? serial::exact_correlation(in, window_floor, out)
                       : omp::exact_correlation(in, window_floor, out);
}

void frac_correlation(const CorrelationInputs& in, const FracCorrelationCoeffs& c,
                      double window_floor, std::span<double> out, Exec exec) {
  require_inputs(in, out.size(), true);
  exec == Exec::serial ? serial::frac_correlation(in, c, window_floor, out)
                       : omp::frac_correlation(in, c, window_floor, out);
}

}  // namespace fks::kernels
