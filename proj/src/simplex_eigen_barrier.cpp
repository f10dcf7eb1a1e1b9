#include "simplex_eigen_barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hindex::detail {

namespace {

constexpr double kGapTarget = 1e-13;
constexpr double kGrowth = 8.0;
constexpr int kMaxNewton = 200;
constexpr double kCentered = 1e-12;

MatrixC weighted_gram(const MatrixC& f, const VectorR& w) {
  return f.adjoint() * w.cast<Complex>().asDiagonal() * f;
}

double top_eigenvalue(const MatrixC& m) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

struct Slack {
  bool ok = false;
  double logdet = 0.0;
  MatrixC inverse;
};

Slack factor_slack(const MatrixC& s) {
  Slack out;
  Eigen::LLT<MatrixC> llt(s);
  if (llt.info() != Eigen::Success) return out;
  const VectorR diag = llt.matrixLLT().diagonal().real();
  if ((diag.array() <= 0.0).any()) return out;
  out.logdet = 2.0 * diag.array().log().sum();
  out.inverse = llt.solve(MatrixC::Identity(s.rows(), s.cols()));
  out.ok = true;
  return out;
}

}  // namespace

CapacityResult maximize_diagonal_capacity(const MatrixC& factor, const VectorR& start) {
  const Eigen::Index n = factor.rows();
  const Eigen::Index r = factor.cols();
  const VectorR row_norms = factor.rowwise().squaredNorm();
  if (n == 0 || r == 0 || row_norms.minCoeff() <= 0.0)
    throw IndexError("capacity solver needs a factor with nonzero rows");
  // unit rows force u_i <= 1, so c.u <= sum c; with v_i = u_i / |f_i|^2 the objective becomes c.u
  const VectorR c = row_norms.cwiseInverse();
  const MatrixC f = c.cwiseSqrt().cast<Complex>().asDiagonal() * factor;
  const MatrixC eye = MatrixC::Identity(r, r);
  const double degree = static_cast<double>(n + r);

  VectorR u = start.cwiseProduct(row_norms);
  u /= u.sum();
  u *= 0.5 / top_eigenvalue(weighted_gram(f, u));

  // barrier change from the current u; differences stay accurate once
  // tau * c.u dwarfs the log terms
  auto change = [&](const VectorR& uu, double tau, const Slack& from, Slack& to) {
    if ((uu.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    to = factor_slack(eye - weighted_gram(f, uu));
    if (!to.ok) return std::numeric_limits<double>::infinity();
    return -tau * c.dot(uu - u) - (to.logdet - from.logdet) - (uu.array() / u.array()).log().sum();
  };

  // Y = S^-1 / min_i (k_ii / c_i) has f_i* Y f_i >= c_i, so tr Y bounds
  // c.u from above
  auto dual_bound = [&](const Slack& at) {
    const MatrixC k = f * at.inverse * f.adjoint();
    return k.diagonal().real().cwiseQuotient(c).minCoeff() / at.inverse.trace().real();
  };

  CapacityResult out;
  double best_dual = 0.0;
  Slack slack = factor_slack(eye - weighted_gram(f, u));
  for (double tau = degree / c.sum(); degree / tau > kGapTarget * c.dot(u); tau *= kGrowth) {
    for (int it = 0; it < kMaxNewton; ++it) {
      const MatrixC k = f * slack.inverse * f.adjoint();
      const VectorR g = k.diagonal().real() - u.cwiseInverse() - tau * c;
      MatrixR h = k.cwiseAbs2();
      h.diagonal() += u.cwiseInverse().cwiseAbs2();
      const MatrixR hs = u.asDiagonal() * h * u.asDiagonal();
      const VectorR step = u.cwiseProduct(hs.ldlt().solve(-(u.cwiseProduct(g))));
      const double decrement = -g.dot(step);
      ++out.newton_steps;
      if (!(decrement > kCentered)) break;

      double s = 1.0;
      bool accepted = false;
      Slack trial;
      while (s > 1e-20) {
        const VectorR ut = u + s * step;
        if (change(ut, tau, slack, trial) <= -0.25 * s * decrement) {
          u = ut;
          slack = trial;
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) break;
    }
    best_dual = std::max(best_dual, dual_bound(slack));
  }

  out.lower_bound = best_dual;
  out.v = u.cwiseProduct(c);
  out.value = 1.0 / c.dot(u);
  return out;
}

}  // namespace hindex::detail
