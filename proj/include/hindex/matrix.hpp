#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hindex {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using MatrixR = Eigen::MatrixXd;
using VectorR = Eigen::VectorXd;

/// 0-based, strictly ascending row/column indices.
using IndexSet = std::vector<int>;

/// A precondition of an index computation does not hold (non-PSD input,
/// dimension mismatch, singular matrix where an inverse is required, ...).
class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical thresholds shared by the index computations.
struct Tolerances {
  /// PSD test: min eigenvalue >= -psd * max(1, trace).
  double psd = 1e-9;
  /// Relative residual below which p = (1,...,1) counts as lying in range(A).
  double range = 1e-8;
  /// Eigen/singular values below rank * max are treated as zero.
  double rank = 1e-10;
  /// Relative tolerance for merging equal spectrum values.
  double merge = 1e-12;
};

/// Square complex Hermitian matrix with a PSD classification.
///
/// Construction projects the input onto the Hermitian matrices, (M + M*)/2,
/// and records the smallest eigenvalue. Values are immutable.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const MatrixC& m, double psd_tol = Tolerances{}.psd);
  explicit HermitianMatrix(const MatrixR& m, double psd_tol = Tolerances{}.psd);
  template <class Derived>
  explicit HermitianMatrix(const Eigen::MatrixBase<Derived>& m, double psd_tol = Tolerances{}.psd)
      : HermitianMatrix(MatrixC(m.template cast<Complex>()), psd_tol) {}

  static HermitianMatrix identity(int n);
  /// All-ones matrix P = pp*.
  static HermitianMatrix ones(int n);
  static HermitianMatrix diagonal(const VectorR& d);
  /// xx*.
  static HermitianMatrix rank_one(const VectorC& x);

  int n() const { return static_cast<int>(m_.rows()); }
  const MatrixC& entries() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  bool is_psd() const { return psd_; }
  double min_eigenvalue() const { return min_eig_; }
  /// Throws IndexError naming `what` unless the matrix is PSD.
  void require_psd(const char* what) const;

  /// True when every imaginary part is exactly zero.
  bool is_real() const;
  bool is_diagonal(double tol = 0.0) const;
  /// True when every entry is real and >= -tol.
  bool is_nonnegative(double tol = 0.0) const;

  MatrixR real_part() const { return m_.real(); }
  VectorR diagonal_entries() const { return m_.diagonal().real(); }
  double trace() const { return m_.diagonal().real().sum(); }

 private:
  struct KnownPsd {};
  HermitianMatrix(const MatrixC& m, KnownPsd);

  friend HermitianMatrix hadamard(const HermitianMatrix&, const HermitianMatrix&);
  friend HermitianMatrix kronecker(const HermitianMatrix&, const HermitianMatrix&);
  friend HermitianMatrix principal_submatrix(const HermitianMatrix&, const IndexSet&);

  MatrixC m_;
  double min_eig_ = 0.0;
  bool psd_ = true;
};

/// All-ones vector of length n.
VectorC ones(int n);

/// Entrywise product. PSD inputs give a PSD output (Schur).
HermitianMatrix hadamard(const HermitianMatrix& a, const HermitianMatrix& b);

/// Block matrix (a_ij * b).
HermitianMatrix kronecker(const HermitianMatrix& a, const HermitianMatrix& b);

/// Rows and columns `j` of `a`, in ascending order.
HermitianMatrix principal_submatrix(const HermitianMatrix& a, const IndexSet& j);

/// ww* o c = D_w c D_w*, for |w_i| = 1.
HermitianMatrix unimodular_conjugate(const HermitianMatrix& c, const VectorC& w);

/// Entrywise |a_ij|^2, i.e. conj(A) o A.
HermitianMatrix abs_squared(const HermitianMatrix& a);

/// Inflation P_m (x) A.
HermitianMatrix inflate(const HermitianMatrix& a, int m);

/// B (n x r) with A = B B*, r the numerical rank. Requires A PSD.
MatrixC psd_factor(const HermitianMatrix& a, double rank_tol = Tolerances{}.rank);

/// Orthogonal projector onto ker A.
MatrixC kernel_projector(const HermitianMatrix& a, double rank_tol = Tolerances{}.rank);

/// Minimum-norm least-squares solution of A y = rhs through the spectral
/// decomposition; eigenvalues below rank_tol * |lambda|_max are dropped.
VectorC pseudo_solve(const HermitianMatrix& a, const VectorC& rhs,
                     double rank_tol = Tolerances{}.rank);

/// Singular values, descending.
VectorR singular_values(const MatrixC& m);

}  // namespace hindex
