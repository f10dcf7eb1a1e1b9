#include "hindex/minimal_index.hpp"

#include <cmath>

#include "hindex/oracle.hpp"

namespace hindex {

namespace {

constexpr double kMaxCondition = 1e10;

void require_nonempty(const HermitianMatrix& a, const char* what) {
  if (a.n() == 0) throw IndexError(std::string(what) + ": empty matrix");
}

}  // namespace

MinimalIndexResult minimal_index(const HermitianMatrix& a, const Tolerances& tol) {
  require_nonempty(a, "minimal_index");
  a.require_psd("minimal_index");
  const int n = a.n();
  const VectorC p = ones(n);
  MinimalIndexResult out;

  if (n == 1) {
    const double d = a(0, 0).real();
    out.in_range = d > 0.0;
    out.residual = out.in_range ? 0.0 : 1.0;
    if (out.in_range) {
      out.value = d;
      out.witness_y = VectorC::Constant(1, 1.0 / d);
    }
    return out;
  }

  const VectorC y = pseudo_solve(a, p, tol.rank);
  out.residual = (a.entries() * y - p).norm() / p.norm();
  const double quad = y.sum().real();
  out.in_range = out.residual <= tol.range && quad > 0.0 && std::isfinite(quad);
  if (out.in_range) {
    out.value = 1.0 / quad;
    out.witness_y = y;
  }
  return out;
}

SimplexMinimum minimal_index_simplex(const HermitianMatrix& a) {
  require_nonempty(a, "minimal_index_simplex");
  a.require_psd("minimal_index_simplex");
  const HyperplaneQpResult qp = hyperplane_qp(a.entries());
  return {qp.value, qp.argmin};
}

double minimal_index_determinant(const HermitianMatrix& a, const Tolerances& tol) {
  require_nonempty(a, "minimal_index_determinant");
  a.require_psd("minimal_index_determinant");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(a.entries(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= tol.psd * std::max(1.0, a.trace()) || hi / lo > kMaxCondition)
    throw IndexError("minimal_index_determinant: matrix is singular or ill-conditioned");
  const int n = a.n();
  const double det_a = a.entries().determinant().real();
  const double det_ap = (a.entries() + MatrixC::Ones(n, n)).determinant().real();
  return det_a / (det_ap - det_a);
}

std::pair<double, double> kronecker_index_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                                const Tolerances& tol) {
  const double ia = minimal_index(a, tol).value;
  const double ib = minimal_index(b, tol).value;
  return {ia * ib, minimal_index(kronecker(a, b), tol).value};
}

}  // namespace hindex
