#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hindex/execution.hpp"
#include "hindex/matrix.hpp"
#include "hindex/norms.hpp"

namespace hindex {

/// Settings for the randomized minimizers. Identical config and input give
/// identical output, whatever the execution policy.
struct OracleConfig {
  std::uint64_t seed = 20240917;
  int restarts = 64;
  int max_iters = 2000;
  double step_tol = 1e-12;
  int sample_budget = 10000;
  /// Restarts run in batches of this size; the run stops after
  /// `saturation_window` consecutive restarts that improve the incumbent
  /// by less than `saturation_gain`.
  int batch = 8;
  int saturation_window = 8;
  double saturation_gain = 1e-10;
  Execution exec = Execution::Parallel;
};

/// Objective on the unit sphere of R^n. `gradient`, when set, returns the
/// Euclidean gradient (or any subgradient) at a unit vector; otherwise
/// central differences are used.
struct SphereObjective {
  std::function<double(const VectorR&)> value;
  std::function<VectorR(const VectorR&)> gradient;
};

struct SphereResult {
  double value = 0.0;
  VectorR argmin;
  int restarts_run = 0;
  /// Fraction of restarts ending within 1e-9 of the best value.
  double saturation = 0.0;
  std::vector<double> restart_values;
};

/// Multi-start descent on the unit sphere. Each restart runs a gradient
/// sampling method: the descent direction is the minimum-norm element of
/// the convex hull of gradients sampled around the iterate, followed by a
/// step-halving line search; the sampling radius shrinks when no descent
/// is found. Restart 0 starts at (1,...,1)/sqrt(n); the coordinate vectors
/// are always evaluated as candidates.
SphereResult sphere_minimize(const SphereObjective& objective, int n, const OracleConfig& cfg);

struct ProbeResult {
  double value = 0.0;
  MatrixC argmin;
  bool rank_one = false;
  int samples = 0;
};

/// Minimum of `objective` over PSD B scaled to normalization(B) = 1: random
/// B = G G* of every rank (complex Gaussian G, `sample_budget` draws) plus
/// the rank-one sphere minimization of x -> objective(xx*).
ProbeResult random_psd_probe(const std::function<double(const HermitianMatrix&)>& objective, int n,
                             const OracleConfig& cfg, const NormDescriptor& normalization);

enum class SimplexDomain {
  /// { z : sum z_i = 1 }
  Hyperplane,
  /// { z >= 0 : sum z_i = 1 }
  Positive,
};

struct QpResult {
  double value = 0.0;
  VectorR argmin;
};

/// Minimizes <Bz, z> over the hyperplane or the probability simplex for a
/// real symmetric PSD B. The positive-simplex variant enumerates support
/// patterns for n <= 12 and falls back to projected gradient above that.
QpResult simplex_qp(const MatrixR& b, SimplexDomain domain);

struct HyperplaneQpResult {
  double value = 0.0;
  VectorC argmin;
  /// false when the KKT system is inconsistent (p not in range B) and the
  /// argmin was taken from ker B instead.
  bool kkt_consistent = true;
};

/// Minimizes <Bz, z> subject to sum z_i = 1 for Hermitian PSD B, through
/// the KKT system [B p; p* 0]. When p is not in range(B) the minimum is 0,
/// attained at a kernel vector.
HyperplaneQpResult hyperplane_qp(const MatrixC& b);

}  // namespace hindex
