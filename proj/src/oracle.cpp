#include "hindex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hindex/random.hpp"
#include "restarts.hpp"

namespace hindex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// simplex QP

// Minimizer of <Bz,z> over sum z = 1 restricted to the support `cols`, from
// the KKT system. Returns false when the system has no consistent solution.
bool support_kkt(const MatrixR& b, const std::vector<int>& cols, VectorR& z) {
  const int k = static_cast<int>(cols.size());
  MatrixR kkt = MatrixR::Zero(k + 1, k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) kkt(r, c) = b(cols[r], cols[c]);
    kkt(r, k) = 1.0;
    kkt(k, r) = 1.0;
  }
  VectorR rhs = VectorR::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::CompleteOrthogonalDecomposition<MatrixR> cod(kkt);
  cod.setThreshold(1e-13);
  const VectorR sol = cod.solve(rhs);
  const double scale = 1.0 + kkt.cwiseAbs().maxCoeff() * sol.cwiseAbs().maxCoeff();
  if ((kkt * sol - rhs).norm() > 1e-9 * scale) return false;
  z = VectorR::Zero(b.rows());
  for (int r = 0; r < k; ++r) z(cols[r]) = sol(r);
  return true;
}

VectorR project_to_simplex(const VectorR& v) {
  VectorR s = v;
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    cumulative += s(i);
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (s(i) - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0);
}

// Active-set refinement from an approximate minimizer: solve the KKT system
// on the current support, drop coordinates that go negative, add the most
// violated inactive coordinate.
QpResult polish_support(const MatrixR& b, QpResult start) {
  const Eigen::Index n = b.rows();
  std::vector<int> cols;
  const double cut = 1e-9 * start.argmin.maxCoeff();
  for (int i = 0; i < n; ++i)
    if (start.argmin(i) > cut) cols.push_back(i);
  QpResult best = start;
  VectorR z;
  for (int round = 0; round < 4 * n && !cols.empty(); ++round) {
    if (!support_kkt(b, cols, z)) break;
    if (z.minCoeff() < 0.0) {
      const auto worst = std::min_element(cols.begin(), cols.end(), [&](int i, int j) { return z(i) < z(j); });
      cols.erase(worst);
      continue;
    }
    const double value = z.dot(b * z);
    if (value < best.value) best = {value, z};
    const VectorR g = b * z;
    int enter = -1;
    double violation = 1e-12 * std::max(value, 1e-300);
    for (int i = 0; i < n; ++i) {
      if (std::find(cols.begin(), cols.end(), i) != cols.end()) continue;
      if (value - g(i) > violation) {
        violation = value - g(i);
        enter = i;
      }
    }
    if (enter < 0) break;
    cols.push_back(enter);
    std::sort(cols.begin(), cols.end());
  }
  return best;
}

// Accelerated projected gradient with function-value restarts.
QpResult positive_simplex_projected(const MatrixR& b) {
  const Eigen::Index n = b.rows();
  VectorR z = VectorR::Constant(n, 1.0 / static_cast<double>(n));
  VectorR y = z;
  double f = z.dot(b * z);
  double momentum = 1.0;
  const double step = 1.0 / (2.0 * std::max(b.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300));
  for (int it = 0; it < 100000; ++it) {
    const VectorR next = project_to_simplex(y - step * 2.0 * (b * y));
    const double fn = next.dot(b * next);
    if (fn > f) {
      y = z;
      momentum = 1.0;
      continue;
    }
    const double moved = (next - z).cwiseAbs().maxCoeff();
    const double m = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = next + ((momentum - 1.0) / m) * (next - z);
    momentum = m;
    z = next;
    f = fn;
    if (moved < 1e-16) break;
  }
  return polish_support(b, {f, z});
}

// ---------------------------------------------------------------------------
// sphere descent

VectorR tangent(const VectorR& g, const VectorR& x) { return g - x.dot(g) * x; }

VectorR normalized(const VectorR& y) { return y / y.norm(); }

VectorR central_difference(const std::function<double(const VectorR&)>& f, const VectorR& x) {
  const Eigen::Index n = x.size();
  VectorR g(n);
  const double h = 1e-7;
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorR up = x;
    VectorR down = x;
    up(i) += h;
    down(i) -= h;
    g(i) = (f(normalized(up)) - f(normalized(down))) / (2.0 * h);
  }
  return g;
}

// Minimum-norm point of the convex hull of the columns of g.
VectorR min_norm_hull_point(const MatrixR& g) {
  const MatrixR gram = g.transpose() * g;
  const QpResult qp = simplex_qp(gram, SimplexDomain::Positive);
  return g * qp.argmin;
}

struct RestartOutcome {
  double value = kInf;
  VectorR x;
};

RestartOutcome gradient_sampling(const SphereObjective& obj, VectorR x, const OracleConfig& cfg,
                                 Rng& rng) {
  const int n = static_cast<int>(x.size());
  auto grad = [&](const VectorR& at) -> VectorR {
    return obj.gradient ? obj.gradient(at) : central_difference(obj.value, at);
  };
  double f = obj.value(x);
  if (n == 1) return {f, x};
  const int samples = std::min(n + 1, 10);
  double radius = 0.1;
  constexpr double kMinRadius = 1e-11;
  double step = 1.0;
  for (int it = 0; it < cfg.max_iters && radius >= kMinRadius; ++it) {
    MatrixR g(n, samples + 1);
    g.col(0) = tangent(grad(x), x);
    for (int s = 1; s <= samples; ++s) {
      const VectorR dir = random_unit_vector(rng, n);
      const double r = radius * std::pow(rng.uniform(), 1.0 / n);
      g.col(s) = tangent(grad(normalized(x + r * dir)), x);
    }
    const VectorR d = -min_norm_hull_point(g);
    const double dn = d.norm();
    if (dn <= 1e-12) {
      radius *= 0.1;
      continue;
    }
    double t = std::min(1.0, 2.0 * step);
    bool accepted = false;
    while (t * dn > cfg.step_tol) {
      const VectorR trial = normalized(x + t * d);
      const double ft = obj.value(trial);
      if (ft < f - 1e-8 * t * dn * dn) {
        x = trial;
        f = ft;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (accepted) {
      step = t;
    } else {
      radius *= 0.1;
    }
  }
  return {f, x};
}

}  // namespace

QpResult simplex_qp(const MatrixR& b, SimplexDomain domain) {
  const int n = static_cast<int>(b.rows());
  if (n == 0 || b.cols() != n) throw IndexError("simplex_qp: matrix must be square and nonempty");
  if (domain == SimplexDomain::Hyperplane) {
    const HyperplaneQpResult r = hyperplane_qp(b.cast<Complex>());
    return {r.value, r.argmin.real()};
  }
  if (n > 12) return positive_simplex_projected(b);

  QpResult best{kInf, VectorR::Zero(n)};
  std::vector<int> cols;
  VectorR z;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    cols.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) cols.push_back(i);
    if (!support_kkt(b, cols, z)) continue;
    if (z.minCoeff() < -1e-12) continue;
    z = z.cwiseMax(0.0);
    z /= z.sum();
    const double value = z.dot(b * z);
    if (value < best.value - 1e-15) best = {value, z};
  }
  return best;
}

HyperplaneQpResult hyperplane_qp(const MatrixC& b) {
  const Eigen::Index n = b.rows();
  MatrixC kkt = MatrixC::Zero(n + 1, n + 1);
  kkt.topLeftCorner(n, n) = b;
  kkt.col(n).head(n).setOnes();
  kkt.row(n).head(n).setOnes();
  VectorC rhs = VectorC::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::CompleteOrthogonalDecomposition<MatrixC> cod(kkt);
  cod.setThreshold(1e-13);
  const VectorC sol = cod.solve(rhs);

  HyperplaneQpResult out;
  const double scale = 1.0 + kkt.cwiseAbs().maxCoeff() * sol.cwiseAbs().maxCoeff();
  if ((kkt * sol - rhs).norm() <= 1e-9 * scale) {
    out.argmin = sol.head(n);
  } else {
    out.kkt_consistent = false;
    const MatrixC q = kernel_projector(HermitianMatrix(b));
    const VectorC k = q * VectorC::Ones(n);
    out.argmin = k / k.sum();
  }
  out.value = std::max(0.0, out.argmin.dot(b * out.argmin).real());
  return out;
}

SphereResult sphere_minimize(const SphereObjective& objective, int n, const OracleConfig& cfg) {
  if (n < 1) throw IndexError("sphere_minimize: dimension must be positive");
  auto run = [&](int restart) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    VectorR x0 = restart == 0 ? VectorR(VectorR::Constant(n, 1.0 / std::sqrt(double(n))))
                              : random_unit_vector(rng, n);
    return gradient_sampling(objective, x0, cfg, rng);
  };
  std::vector<RestartOutcome> runs = detail::run_restarts<RestartOutcome>(cfg, run);

  SphereResult out;
  out.restarts_run = static_cast<int>(runs.size());
  const std::size_t b = detail::best_restart(runs);
  out.value = runs[b].value;
  out.argmin = runs[b].x;
  out.saturation = detail::saturation(runs, out.value);
  for (const auto& r : runs) out.restart_values.push_back(r.value);
  for (int i = 0; i < n; ++i) {
    const VectorR e = VectorR::Unit(n, i);
    const double v = objective.value(e);
    if (v < out.value) {
      out.value = v;
      out.argmin = e;
    }
  }
  return out;
}

ProbeResult random_psd_probe(const std::function<double(const HermitianMatrix&)>& objective, int n,
                             const OracleConfig& cfg, const NormDescriptor& normalization) {
  if (n < 1) throw IndexError("random_psd_probe: dimension must be positive");
  const int budget = std::max(cfg.sample_budget, 0);
  std::vector<double> values(static_cast<std::size_t>(budget), kInf);
  auto sample = [&](int s) {
    Rng rng(derive_seed(cfg.seed ^ 0x70726f6265ULL, static_cast<std::uint64_t>(s)));
    const int rank = 1 + s % n;
    const MatrixC g = random_gaussian(rng, n, rank, true);
    const MatrixC b = g * g.adjoint();
    return HermitianMatrix(MatrixC(b / normalization.evaluate(b)));
  };
  if (cfg.exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int s = 0; s < budget; ++s) values[static_cast<std::size_t>(s)] = objective(sample(s));
  } else {
    for (int s = 0; s < budget; ++s) values[static_cast<std::size_t>(s)] = objective(sample(s));
  }

  ProbeResult out;
  out.samples = budget;
  out.value = kInf;
  for (int s = 0; s < budget; ++s) {
    if (values[static_cast<std::size_t>(s)] < out.value) {
      out.value = values[static_cast<std::size_t>(s)];
      out.argmin = sample(s).entries();
    }
  }

  SphereObjective rank_one;
  rank_one.value = [&](const VectorR& x) {
    const MatrixC b = x.cast<Complex>() * x.cast<Complex>().adjoint();
    return objective(HermitianMatrix(MatrixC(b / normalization.evaluate(b))));
  };
  const SphereResult sphere = sphere_minimize(rank_one, n, cfg);
  if (sphere.value <= out.value) {
    out.value = sphere.value;
    const VectorC x = sphere.argmin.cast<Complex>();
    out.argmin = x * x.adjoint();
    out.rank_one = true;
  }
  return out;
}

}  // namespace hindex
