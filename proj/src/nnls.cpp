#include "hindex/nnls.hpp"

#include <cmath>
#include <vector>

namespace hindex {

namespace {

// Least squares on the passive columns; other entries are zero.
VectorR passive_solve(const MatrixR& a, const VectorR& b, const std::vector<bool>& passive) {
  const Eigen::Index n = a.cols();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < n; ++j)
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  VectorR z = VectorR::Zero(n);
  if (cols.empty()) return z;
  MatrixR sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
  Eigen::CompleteOrthogonalDecomposition<MatrixR> cod(sub);
  cod.setThreshold(1e-12);
  const VectorR zs = cod.solve(b);
  for (std::size_t c = 0; c < cols.size(); ++c) z(cols[c]) = zs(static_cast<Eigen::Index>(c));
  return z;
}

}  // namespace

NnlsOutcome nnls(const MatrixR& a, const VectorR& b, double residual_tol) {
  const Eigen::Index n = a.cols();
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  VectorR x = VectorR::Zero(n);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
  const double dual_tol = 1e-12 * scale * static_cast<double>(std::max<Eigen::Index>(n, 1));
  const int max_outer = 3 * static_cast<int>(n) + 10;

  VectorR w = a.transpose() * (b - a * x);
  for (int outer = 0; outer < max_outer; ++outer) {
    Eigen::Index t = -1;
    double best = dual_tol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best) {
        best = w(j);
        t = j;
      }
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = true;

    for (int inner = 0; inner <= static_cast<int>(n); ++inner) {
      const VectorR z = passive_solve(a, b, passive);
      bool positive = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) positive = false;
      if (positive) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          const double denom = x(j) - z(j);
          if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
        }
      x += alpha * (z - x);
      bool moved = false;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && x(j) <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
          moved = true;
        }
      if (!moved) {
        // z had a nonpositive entry with x_j == z_j == 0; drop it explicitly
        for (Eigen::Index j = 0; j < n; ++j)
          if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
            passive[static_cast<std::size_t>(j)] = false;
            x(j) = 0.0;
          }
      }
    }
    w = a.transpose() * (b - a * x);
  }

  for (Eigen::Index j = 0; j < n; ++j)
    if (x(j) < 0.0 && x(j) >= -1e-10) x(j) = 0.0;

  NnlsOutcome out;
  out.u = x;
  out.residual = (a * x - b).norm();
  out.feasible = (x.array() >= 0.0).all() && out.residual <= residual_tol;
  return out;
}

}  // namespace hindex
