#pragma once

#include <optional>
#include <utility>

#include "hindex/matrix.hpp"

namespace hindex {

/// I(A): the largest lambda with A - lambda P PSD, P the all-ones matrix.
struct MinimalIndexResult {
  double value = 0.0;
  /// A solution of A y = p, present exactly when p lies in range(A).
  std::optional<VectorC> witness_y;
  bool in_range = false;
  /// |A y - p| / |p| for the least-squares y.
  double residual = 0.0;
};

/// Pseudo-solve path: y = A^+ p; positive iff p is in range(A), and then
/// I(A) = 1 / <Ay, y> = 1 / sum y_i.
MinimalIndexResult minimal_index(const HermitianMatrix& a, const Tolerances& tol = {});

struct SimplexMinimum {
  double value = 0.0;
  VectorC z;
};

/// min <Az, z> over the hyperplane sum z_i = 1, from the KKT system of the
/// equality-constrained quadratic program.
SimplexMinimum minimal_index_simplex(const HermitianMatrix& a);

/// det(A) / (det(A + P) - det(A)). Throws IndexError for singular or badly
/// conditioned (cond > 1e10) input.
double minimal_index_determinant(const HermitianMatrix& a, const Tolerances& tol = {});

/// (I(A) I(B), I(A (x) B)).
std::pair<double, double> kronecker_index_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                                const Tolerances& tol = {});

}  // namespace hindex
