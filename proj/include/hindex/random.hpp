#pragma once

#include <cstdint>
#include <random>

#include "hindex/matrix.hpp"

namespace hindex {

/// Seeded generator used by every randomized routine. Normal deviates come
/// from Box-Muller on 53-bit uniforms so that streams do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double normal();
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream seed for (base, stream) via splitmix64.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

MatrixC random_gaussian(Rng& rng, int rows, int cols, bool complex);
MatrixC random_unitary(Rng& rng, int n);

/// G G* with G an n x rank standard Gaussian matrix.
HermitianMatrix random_psd(Rng& rng, int n, int rank, bool complex);

/// Real PSD matrix with nonnegative entries, alternating between the
/// constructions G o G (G random PSD) and C^T C (C entrywise nonnegative).
HermitianMatrix random_nonnegative_psd(Rng& rng, int n);

/// Uniform point in the interior of the probability simplex.
VectorR random_simplex_point(Rng& rng, int n);

/// Uniform point on the unit sphere of R^n.
VectorR random_unit_vector(Rng& rng, int n);

}  // namespace hindex
