#pragma once

#include <optional>
#include <string>

#include "hindex/matrix.hpp"
#include "hindex/norms.hpp"
#include "hindex/oracle.hpp"

namespace hindex {

/// I(N, A) = min N(A o B) over PSD B with N(B) = 1.
struct NormIndexResult {
  double value = 0.0;
  NormDescriptor norm = NormDescriptor::frobenius();
  std::string method;
  /// True when value is only an upper bound (randomized search).
  bool upper_bound = false;
  /// Unit x with N(A o xx*) = value, when the minimum is at rank one.
  std::optional<VectorC> witness_x;
};

/// I(1, A) = min_i A_ii.
double trace_index(const HermitianMatrix& a);

/// I(2, A) = sqrt(I(sp, conj(A) o A)). Also accepts a Hermitian A that is
/// not PSD as long as conj(A) o A is PSD; throws IndexError otherwise.
NormIndexResult frobenius_index(const HermitianMatrix& a);

/// I(N, D) = 1 / N'(D^-1) for a positive diagonal D given by `d`.
double diagonal_index(const NormDescriptor& norm, const VectorR& d);

/// I(N, xx*) = min_i |x_i|^2, whatever N.
double rank_one_index(const VectorC& x);

/// I(N, D(A)) with D(A) the diagonal part: a lower bound for I(N, A).
/// Zero when some A_ii is zero.
double norm_index_lower_bound(const NormDescriptor& norm, const HermitianMatrix& a);

/// Randomized upper bound: min N(A o B) over sampled PSD B of every rank
/// plus rank-one sphere descent.
NormIndexResult norm_index_search(const NormDescriptor& norm, const HermitianMatrix& a,
                                  const OracleConfig& cfg = {});

/// Exact value where a closed form or exact algorithm exists (schatten 1,
/// 2 and inf, diagonal A, rank-one A); norm_index_search otherwise.
NormIndexResult norm_index(const NormDescriptor& norm, const HermitianMatrix& a,
                           const OracleConfig& cfg = {});

/// inf over diagonal D >= A of I(2, D) = (sum D_ii^-2)^-1/2, computed as
/// min over unit x of |A o xx*|_sp / |x o x|_2 by sphere descent.
double inf2_relaxation(const HermitianMatrix& a, const OracleConfig& cfg = {});

struct Inf2Witness {
  HermitianMatrix a;
  double relaxed = 0.0;
  double frobenius = 0.0;
  double gap = 0.0;
  int sample = 0;
};

/// Random search over small real PSD A (n = 2, 3) for
/// inf2_relaxation(A) - I(2, A) > 1e-3. Samples `cfg.sample_budget`
/// matrices and returns the first witness.
std::optional<Inf2Witness> counterexample_search_inf2(const OracleConfig& cfg = {});

}  // namespace hindex
