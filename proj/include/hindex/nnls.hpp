#pragma once

#include "hindex/matrix.hpp"

namespace hindex {

/// Result of min |A u - b| subject to u >= 0.
struct NnlsOutcome {
  /// residual <= tolerance, i.e. b is (numerically) in the cone spanned by A's columns.
  bool feasible = false;
  VectorR u;
  double residual = 0.0;
};

/// Lawson-Hanson active-set nonnegative least squares. Least-squares
/// subproblems on the passive set use a complete orthogonal decomposition,
/// so rank-deficient A is handled. Entries in [-1e-10, 0) are clipped to 0.
/// `feasible` is set when the residual is at most `residual_tol`.
NnlsOutcome nnls(const MatrixR& a, const VectorR& b, double residual_tol);

}  // namespace hindex
