#include "hindex/execution.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace hindex {

void set_worker_cap(int workers) {
  if (workers >= 1) omp_set_num_threads(workers);
}

void apply_worker_cap_from_env() {
  const char* env = std::getenv("HINDEX_THREADS");
  if (env == nullptr) return;
  try {
    set_worker_cap(std::stoi(env));
  } catch (const std::exception&) {
    // ignore malformed values; the OpenMP default stays in effect
  }
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace hindex
