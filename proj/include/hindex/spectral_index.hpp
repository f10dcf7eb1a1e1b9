#pragma once

#include <optional>
#include <string>

#include "hindex/execution.hpp"
#include "hindex/matrix.hpp"
#include "hindex/nnls.hpp"
#include "hindex/oracle.hpp"

namespace hindex {

enum class SpectralMethod { Combinatorial, RankOneSearch, DiagonalOnly };

const char* method_name(SpectralMethod m);

/// I(sp, A) = min over unit x of |A o xx*|_sp, with its certificates.
struct SpectralIndexResult {
  double value = 0.0;
  SpectralMethod method = SpectralMethod::RankOneSearch;
  /// Combinatorial path: the first subset J attaining the minimum and the
  /// nonnegative solution of A_J u = p_J.
  std::optional<IndexSet> witness_subset;
  std::optional<VectorR> witness_u;
  /// Unit vector with |A o xx*|_sp = value.
  std::optional<VectorC> witness_x;
  /// Certified lower bound (search path); equals value for exact methods.
  double lower_bound = 0.0;
  int restarts = 0;
  double saturation = 0.0;
};

/// Nonnegative solution of A u = p by NNLS, feasible within
/// tol.range * sqrt(n). Requires real nonnegative entries and a positive
/// diagonal.
NnlsOutcome nonneg_solution(const HermitianMatrix& a, const Tolerances& tol = {});

inline constexpr int kDefaultSubsetLimit = 16;

/// Exact I(sp, A) for real PSD A with nonnegative entries: the minimum of
/// I(A_J) over the subsets J admitting u >= 0 with A_J u = p_J. Subsets run
/// by increasing size, lexicographic within a size; the first one within
/// 1e-12 (relative) of the minimum is the witness.
SpectralIndexResult spectral_index_combinatorial(const HermitianMatrix& a,
                                                 int n_max = kDefaultSubsetLimit,
                                                 Execution exec = Execution::Parallel,
                                                 const Tolerances& tol = {});

/// I(sp, A) for any PSD A. Phases of x drop out, so the search runs over
/// w = |x|^2 in the simplex, where the top eigenvalue of A o sqrt(w)sqrt(w)*
/// is convex; solved by a barrier method that also yields a dual lower bound.
SpectralIndexResult spectral_index_search(const HermitianMatrix& a, const OracleConfig& cfg = {});

struct DiagonalRelaxation {
  /// inf (sum 1/d_i)^-1 over diagonal D >= A.
  double value = 0.0;
  /// Near-optimal diagonal of D.
  VectorR d;
  double lower_bound = 0.0;
};

DiagonalRelaxation spectral_index_diag_relax(const HermitianMatrix& a, const OracleConfig& cfg = {});

/// min over unit x of |D_x B|_sp^2 for rectangular B, the spectral index of
/// B B*.
SpectralIndexResult spectral_index_factored(const MatrixC& b, const OracleConfig& cfg = {});

/// Closed-form test for 2x2 PSD A = [[a, b], [conj b, c]]: whether
/// I(sp, A) = I(A) != 0, i.e. b real with 0 <= b <= min(a, c) != 0.
bool two_by_two_characterization(const HermitianMatrix& a, double tol = 1e-12);

/// Combinatorial for nonnegative real A with n <= 16, search otherwise.
SpectralIndexResult spectral_index(const HermitianMatrix& a, const OracleConfig& cfg = {});

struct ConjectureProbe {
  int samples = 0;
  /// Samples with I(A) = I(sp, A) > 0 within 1e-7.
  int equal_cases = 0;
  /// First sample with I(A) = I(sp, A) > 0 and some entry outside [0, inf).
  std::optional<HermitianMatrix> counterexample;
  double minimal = 0.0;
  double spectral = 0.0;
};

/// Random search for PSD A with I(A) = I(sp, A) but an entry that is not a
/// nonnegative real. Samples near-equality cases by perturbing matrices
/// with positive solutions of Au = p. Reports only.
ConjectureProbe probe_conjecture(const OracleConfig& cfg);

}  // namespace hindex
