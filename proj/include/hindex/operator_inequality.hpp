#pragma once

#include <string_view>
#include <vector>

#include "hindex/matrix.hpp"

namespace hindex {

/// Nonzero eigenvalues of S, multiplicity allowed.
struct SpectrumList {
  std::vector<double> values;

  /// Comma-separated reals, e.g. "0.5,2,3". Throws IndexError on junk,
  /// zero or non-finite values, or an empty list.
  static SpectrumList parse(std::string_view text);
};

/// Lambda_x = (x_i x_j + 1/(x_i x_j)) for positive x.
HermitianMatrix lambda_matrix(const VectorR& x);

/// I(Lambda_x) by the number of distinct values of x.
double lambda_minimal_index(const VectorR& x, double merge_tol = Tolerances{}.merge);

/// min(M1, M2) with the parts and the minimizing values.
struct LambdaIndex {
  double value = 0.0;
  /// min over values l of l^2 + l^-2.
  double m1 = 0.0;
  /// min over admissible pairs l < m of (l + m)^2 / (1 + l^2 m^2);
  /// infinite when no pair is admissible.
  double m2 = 0.0;
  /// One value (M1 attains the minimum) or the pair (M2 does).
  std::vector<double> argmin;
};

/// I(sp, Lambda_x) = min(M1, M2).
LambdaIndex lambda_spectral_index(const VectorR& x, double merge_tol = Tolerances{}.merge);

/// M(S): the best constant in |STS + S^-1 T S^-1| >= M(S) |T| over PSD T,
/// from the absolute values of the spectrum.
LambdaIndex best_constant(const SpectrumList& spectrum, double merge_tol = Tolerances{}.merge);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  /// max |(STS + S^-1 T S^-1) - Lambda o T| over the entries.
  double hadamard_error = 0.0;
};

/// (|STS + S^-1 T S^-1|_sp, M(S) |T|_sp) for S = diag(s), s > 0.
InequalityCheck verify_inequality(const VectorR& s, const HermitianMatrix& t);

/// PSD T with |T|_sp = 1 and |STS + S^-1 T S^-1|_sp = M(S), S = diag(s).
HermitianMatrix tight_witness(const VectorR& s, double merge_tol = Tolerances{}.merge);

}  // namespace hindex
