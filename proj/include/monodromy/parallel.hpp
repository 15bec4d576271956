#pragma once

// Execution-mode switch for the data-parallel kernels.  Every parallel kernel
// has a serial twin producing bit-identical results; tests compare the two and
// tools/bench_parallel times them against each other.

namespace monodromy {

enum class ExecMode { serial, openmp };

// Threads used by the OpenMP kernels; 0 = runtime default.
struct ExecPolicy {
  ExecMode mode = ExecMode::openmp;
  int threads = 0;
};

inline ExecPolicy serial_policy() { return {ExecMode::serial, 0}; }

}  // namespace monodromy
