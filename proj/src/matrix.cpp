#include "hindex/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace hindex {

namespace {

double smallest_eigenvalue(const MatrixC& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool passes_psd(double min_eig, double trace, double tol) {
  return min_eig >= -tol * std::max(1.0, trace);
}

}  // namespace

HermitianMatrix::HermitianMatrix(const MatrixC& m, double psd_tol) {
  if (m.rows() != m.cols()) throw IndexError("matrix is not square");
  m_ = (m + m.adjoint()) * 0.5;
  // the diagonal of (M + M*)/2 is real; drop rounding noise explicitly
  for (Eigen::Index i = 0; i < m_.rows(); ++i) m_(i, i) = m_(i, i).real();
  min_eig_ = smallest_eigenvalue(m_);
  psd_ = passes_psd(min_eig_, trace(), psd_tol);
}

HermitianMatrix::HermitianMatrix(const MatrixR& m, double psd_tol)
    : HermitianMatrix(MatrixC(m.cast<Complex>()), psd_tol) {}

HermitianMatrix::HermitianMatrix(const MatrixC& m, KnownPsd) : m_(m) {
  min_eig_ = smallest_eigenvalue(m_);
  psd_ = true;
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(MatrixR::Identity(n, n));
}

HermitianMatrix HermitianMatrix::ones(int n) {
  return HermitianMatrix(MatrixR::Ones(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const VectorR& d) {
  return HermitianMatrix(MatrixR(d.asDiagonal()));
}

HermitianMatrix HermitianMatrix::rank_one(const VectorC& x) {
  return HermitianMatrix(MatrixC(x * x.adjoint()));
}

void HermitianMatrix::require_psd(const char* what) const {
  if (!psd_) {
    throw IndexError(std::string(what) + ": matrix is not positive semidefinite (min eigenvalue " +
                     std::to_string(min_eig_) + ")");
  }
}

bool HermitianMatrix::is_real() const {
  return (m_.imag().array() == 0.0).all();
}

bool HermitianMatrix::is_diagonal(double tol) const {
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (i != j && std::abs(m_(i, j)) > tol) return false;
  return true;
}

bool HermitianMatrix::is_nonnegative(double tol) const {
  return is_real() && (m_.real().array() >= -tol).all();
}

VectorC ones(int n) { return VectorC::Ones(n); }

HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n() != b.n()) throw IndexError("hadamard: dimension mismatch");
  MatrixC c = a.entries().cwiseProduct(b.entries());
  if (a.is_psd() && b.is_psd()) return HermitianMatrix(c, HermitianMatrix::KnownPsd{});
  return HermitianMatrix(c);
}

HermitianMatrix kronecker(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int n = a.n();
  const int m = b.n();
  MatrixC k(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k.block(i * m, j * m, m, m) = a(i, j) * b.entries();
  if (a.is_psd() && b.is_psd()) return HermitianMatrix(k, HermitianMatrix::KnownPsd{});
  return HermitianMatrix(k);
}

HermitianMatrix principal_submatrix(const HermitianMatrix& a, const IndexSet& j) {
  if (j.empty()) throw IndexError("principal_submatrix: empty index set");
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (j[k] < 0 || j[k] >= a.n()) throw IndexError("principal_submatrix: index out of range");
    if (k > 0 && j[k] <= j[k - 1])
      throw IndexError("principal_submatrix: indices must be strictly ascending");
  }
  const int m = static_cast<int>(j.size());
  MatrixC s(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) s(r, c) = a(j[r], j[c]);
  if (a.is_psd()) return HermitianMatrix(s, HermitianMatrix::KnownPsd{});
  return HermitianMatrix(s);
}

HermitianMatrix unimodular_conjugate(const HermitianMatrix& c, const VectorC& w) {
  if (w.size() != c.n()) throw IndexError("unimodular_conjugate: dimension mismatch");
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (std::abs(std::abs(w(i)) - 1.0) > 1e-12)
      throw IndexError("unimodular_conjugate: entry " + std::to_string(i) + " is not unimodular");
  return hadamard(HermitianMatrix::rank_one(w), c);
}

HermitianMatrix abs_squared(const HermitianMatrix& a) {
  return hadamard(HermitianMatrix(MatrixC(a.entries().conjugate())), a);
}

HermitianMatrix inflate(const HermitianMatrix& a, int m) {
  if (m < 1) throw IndexError("inflate: factor must be positive");
  return kronecker(HermitianMatrix::ones(m), a);
}

MatrixC psd_factor(const HermitianMatrix& a, double rank_tol) {
  a.require_psd("psd_factor");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(a.entries());
  const VectorR& lambda = es.eigenvalues();
  const double top = lambda.size() ? std::max(lambda.maxCoeff(), 0.0) : 0.0;
  std::vector<int> keep;
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    if (lambda(k) > rank_tol * top && lambda(k) > 0.0) keep.push_back(static_cast<int>(k));
  MatrixC b(a.n(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    b.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) * std::sqrt(lambda(keep[c]));
  return b;
}

MatrixC kernel_projector(const HermitianMatrix& a, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(a.entries());
  const VectorR& lambda = es.eigenvalues();
  const double top = lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
  MatrixC q = MatrixC::Zero(a.n(), a.n());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) <= rank_tol * top) {
      const auto u = es.eigenvectors().col(k);
      q += u * u.adjoint();
    }
  }
  return q;
}

VectorC pseudo_solve(const HermitianMatrix& a, const VectorC& rhs, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(a.entries());
  const VectorR& lambda = es.eigenvalues();
  const MatrixC& u = es.eigenvectors();
  const double top = lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
  VectorC y = VectorC::Zero(a.n());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) > rank_tol * top) {
      const Complex coeff = u.col(k).dot(rhs) / lambda(k);
      y += coeff * u.col(k);
    }
  }
  return y;
}

VectorR singular_values(const MatrixC& m) {
  Eigen::JacobiSVD<MatrixC> svd(m);
  return svd.singularValues();
}

}  // namespace hindex
