#pragma once

namespace telegf {

// Every OpenMP kernel has a serial twin that performs the same floating point
// operations in the same order, so both produce bitwise identical results.
enum class Execution { serial, parallel };

/// Applies TELEGF_THREADS (a positive integer) to the OpenMP runtime and
/// returns the thread count now in effect. Invalid values are ignored.
int configure_threads();

/// Threads the parallel kernels will use.
int active_threads();

}  // namespace telegf
