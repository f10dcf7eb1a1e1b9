#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hindex/matrix.hpp"
#include "hindex/random.hpp"

namespace hindex::testing {

inline MatrixR mat2(double a, double b, double c, double d) {
  MatrixR m(2, 2);
  m << a, b, c, d;
  return m;
}

inline VectorR vec(std::initializer_list<double> v) {
  VectorR out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline double top_eigenvalue(const MatrixC& m) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double min_eigenvalue(const MatrixC& m) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// |A o xx*|_sp for real amplitudes x (phases do not matter for PSD A).
inline double rank_one_spectral(const MatrixC& a, const VectorR& x) {
  const VectorC xc = x.cast<Complex>();
  return top_eigenvalue(a.cwiseProduct(xc * xc.adjoint()));
}

/// Grid oracle for 2x2 spectral index: x = (cos t, sin t), t in [0, pi/2].
inline double grid_spectral_2x2(const MatrixC& a, int steps = 200000) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= steps; ++k) {
    const double t = 0.5 * M_PI * k / steps;
    VectorR x(2);
    x << std::cos(t), std::sin(t);
    best = std::min(best, rank_one_spectral(a, x));
  }
  return best;
}

/// (sum_ij (A^-1)_ij)^-1 by explicit inverse.
inline double inverse_sum_index(const MatrixC& a) {
  return 1.0 / a.inverse().sum().real();
}

/// Random real PSD, full rank with probability one.
inline HermitianMatrix random_real_psd(Rng& rng, int n) { return random_psd(rng, n, n, false); }

}  // namespace hindex::testing
