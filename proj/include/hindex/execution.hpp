#pragma once

namespace hindex {

/// How the embarrassingly parallel kernels (subset enumeration, restarts)
/// are run. Both policies produce bit-identical results.
enum class Execution { Serial, Parallel };

/// Caps the OpenMP worker count; values < 1 remove the cap.
void set_worker_cap(int workers);
/// Applies the HINDEX_THREADS environment variable, when set.
void apply_worker_cap_from_env();
int worker_count();

}  // namespace hindex
