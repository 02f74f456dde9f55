#pragma once

namespace bruhat {

/// Selects the serial reference path or the OpenMP path of a kernel. Both
/// produce identical results.
enum class Exec { serial, parallel };

/// Worker count for parallel kernels: set_thread_count, else BRUHAT_THREADS,
/// else the OpenMP default.
int thread_count();
void set_thread_count(int threads);
bool openmp_enabled() noexcept;

}  // namespace bruhat
