#pragma once

#include "hindex/matrix.hpp"

// Interior-point solver for the convex program behind the spectral index.
// With A = F F* and w = |x|^2, the nonzero spectrum of A o xx* is that of
// F* diag(w) F. Scaling v = w / t turns min over the simplex of its top
// eigenvalue into max { sum v : F* diag(v) F <= I, v >= 0 }, which is also
// the diagonal relaxation over D >= A written in v = 1/diag(D).

namespace hindex::detail {

struct CapacityResult {
  /// 1 / sum v at the final feasible v: an upper bound on the index.
  double value = 0.0;
  /// Objective of a dual-feasible point: a lower bound on the index.
  double lower_bound = 0.0;
  /// Feasible v; w = v / sum v is the simplex minimizer.
  VectorR v;
  int newton_steps = 0;
};

/// Log-barrier path following with damped Newton centering. `start` is any
/// positive vector; it is rescaled onto a feasible point. Every row of
/// `factor` must be nonzero.
CapacityResult maximize_diagonal_capacity(const MatrixC& factor, const VectorR& start);

}  // namespace hindex::detail
