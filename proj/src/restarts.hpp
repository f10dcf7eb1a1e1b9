#pragma once

#include <algorithm>
#include <exception>
#include <limits>
#include <vector>

#include "hindex/execution.hpp"
#include "hindex/oracle.hpp"

namespace hindex::detail {

/// Runs `run(restart_index)` for restarts 0, 1, ... in fixed-size batches.
/// Within a batch the restarts run concurrently under Execution::Parallel.
/// After each batch the results are scanned in restart order and the run
/// stops once `saturation_window` consecutive restarts improved the best
/// value by less than `saturation_gain`. Batch boundaries do not depend on
/// the policy, so serial and parallel runs return identical vectors.
template <class Result, class Run>
std::vector<Result> run_restarts(const OracleConfig& cfg, Run&& run) {
  std::vector<Result> all;
  const int total = std::max(cfg.restarts, 1);
  const int batch = std::max(cfg.batch, 1);
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int start = 0; start < total; start += batch) {
    const int count = std::min(batch, total - start);
    std::vector<Result> results(static_cast<std::size_t>(count));
    if (cfg.exec == Execution::Parallel) {
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < count; ++i) {
        try {
          results[static_cast<std::size_t>(i)] = run(start + i);
        } catch (...) {
#pragma omp critical(hindex_restart_failure)
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = run(start + i);
    }
    for (auto& r : results) {
      if (best - r.value < cfg.saturation_gain) {
        ++stale;
      } else {
        stale = 0;
      }
      best = std::min(best, r.value);
      all.push_back(std::move(r));
    }
    if (stale >= cfg.saturation_window) break;
  }
  return all;
}

/// Index of the smallest value; ties go to the lowest index.
template <class Result>
std::size_t best_restart(const std::vector<Result>& results) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value < results[best].value) best = i;
  return best;
}

template <class Result>
double saturation(const std::vector<Result>& results, double best, double tol = 1e-9) {
  if (results.empty()) return 0.0;
  const auto hits = std::count_if(results.begin(), results.end(),
                                  [&](const Result& r) { return r.value <= best + tol; });
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

}  // namespace hindex::detail
