#pragma once

namespace fks::kernels {

/// Selects the serial reference loop or the OpenMP loop of a kernel. Both
/// paths perform the same floating-point operations in the same order per
/// output element, so their results are bitwise identical.
enum class Exec { serial, parallel };

/// Thread count requested through FKS_NUM_THREADS, or 0 when unset.
int requested_threads();

/// Applies FKS_NUM_THREADS to the OpenMP runtime if it is set.
void configure_threads();

}  // namespace fks::kernels
