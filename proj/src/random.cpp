#include "hindex/random.hpp"

#include <cmath>
#include <numbers>

namespace hindex {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MatrixC random_gaussian(Rng& rng, int rows, int cols, bool complex) {
  MatrixC g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = complex ? rng.normal() : 0.0;
      g(i, j) = Complex(re, im);
    }
  return g;
}

MatrixC random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<MatrixC> qr(random_gaussian(rng, n, n, true));
  MatrixC q = qr.householderQ();
  // fix column phases so the distribution is Haar
  const MatrixC r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix random_psd(Rng& rng, int n, int rank, bool complex) {
  const MatrixC g = random_gaussian(rng, n, rank, complex);
  return HermitianMatrix(MatrixC(g * g.adjoint()));
}

HermitianMatrix random_nonnegative_psd(Rng& rng, int n) {
  if (rng.uniform() < 0.5) {
    const HermitianMatrix g = random_psd(rng, n, rng.integer(1, n), false);
    return hadamard(g, g);
  }
  MatrixR c(rng.integer(1, n + 1), n);
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, j) = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
  // keep the diagonal strictly positive
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    if (c.col(j).maxCoeff() == 0.0) c(rng.integer(0, static_cast<int>(c.rows()) - 1), j) = 0.5 + rng.uniform();
  return HermitianMatrix(MatrixR(c.transpose() * c));
}

VectorR random_simplex_point(Rng& rng, int n) {
  VectorR w(n);
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w(i) = -std::log(u);
  }
  return w / w.sum();
}

VectorR random_unit_vector(Rng& rng, int n) {
  VectorR x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.normal();
  const double len = x.norm();
  if (len == 0.0) return VectorR::Unit(n, 0);
  return x / len;
}

}  // namespace hindex
