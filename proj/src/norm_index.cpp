#include "hindex/norm_index.hpp"

#include <algorithm>
#include <cmath>

#include "hindex/random.hpp"
#include "hindex/spectral_index.hpp"

namespace hindex {

namespace {

constexpr double kInf2Gap = 1e-3;

std::optional<VectorC> top_eigenvector_if_rank_one(const MatrixC& b) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(b);
  const VectorR& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (top <= 0.0) return std::nullopt;
  if (ev.size() > 1 && ev(ev.size() - 2) > 1e-9 * top) return std::nullopt;
  return VectorC(es.eigenvectors().col(ev.size() - 1));
}

}  // namespace

double trace_index(const HermitianMatrix& a) {
  if (a.n() == 0) throw IndexError("trace_index: empty matrix");
  a.require_psd("trace_index");
  return std::max(0.0, a.diagonal_entries().minCoeff());
}

NormIndexResult frobenius_index(const HermitianMatrix& a) {
  if (a.n() == 0) throw IndexError("frobenius_index: empty matrix");
  const HermitianMatrix b = abs_squared(a);
  if (!b.is_psd())
    throw IndexError("frobenius_index: conj(A) o A is not positive semidefinite");
  NormIndexResult out;
  out.norm = NormDescriptor::frobenius();
  if (b.n() <= kDefaultSubsetLimit) {
    const SpectralIndexResult sp = spectral_index_combinatorial(b);
    out.method = "combinatorial";
    out.value = std::sqrt(sp.value);
    if (sp.witness_u) {
      const VectorR& u = *sp.witness_u;
      VectorC x = VectorC::Zero(a.n());
      const IndexSet& j = *sp.witness_subset;
      for (std::size_t r = 0; r < j.size(); ++r)
        x(j[r]) = std::sqrt(std::max(0.0, u(static_cast<Eigen::Index>(r)) / u.sum()));
      out.witness_x = x;
    } else {
      out.witness_x = sp.witness_x;
    }
    return out;
  }
  // min over the simplex of <B w, w>, then x = sqrt(w)
  const QpResult qp = simplex_qp(b.real_part(), SimplexDomain::Positive);
  out.method = "simplex_qp";
  out.value = std::sqrt(std::max(0.0, qp.value));
  out.witness_x = qp.argmin.cwiseMax(0.0).cwiseSqrt().cast<Complex>();
  return out;
}

double diagonal_index(const NormDescriptor& norm, const VectorR& d) {
  if (d.size() == 0) throw IndexError("diagonal_index: empty diagonal");
  if ((d.array() <= 0.0).any()) throw IndexError("diagonal_index: diagonal entries must be positive");
  return 1.0 / norm.dual_gauge(d.cwiseInverse());
}

double rank_one_index(const VectorC& x) {
  if (x.size() == 0) throw IndexError("rank_one_index: empty vector");
  return x.cwiseAbs2().minCoeff();
}

double norm_index_lower_bound(const NormDescriptor& norm, const HermitianMatrix& a) {
  if (a.n() == 0) throw IndexError("norm_index_lower_bound: empty matrix");
  a.require_psd("norm_index_lower_bound");
  const VectorR d = a.diagonal_entries();
  if ((d.array() <= 0.0).any()) return 0.0;
  return diagonal_index(norm, d);
}

NormIndexResult norm_index_search(const NormDescriptor& norm, const HermitianMatrix& a,
                                  const OracleConfig& cfg) {
  if (a.n() == 0) throw IndexError("norm_index_search: empty matrix");
  a.require_psd("norm_index_search");
  if (norm.kind() == NormDescriptor::Kind::KyFan && norm.k() > a.n())
    throw IndexError("norm_index_search: ky fan order exceeds the dimension");
  const MatrixC& entries = a.entries();
  auto objective = [&](const HermitianMatrix& b) {
    return norm.evaluate(MatrixC(entries.cwiseProduct(b.entries())));
  };
  const ProbeResult probe = random_psd_probe(objective, a.n(), cfg, norm);
  NormIndexResult out;
  out.norm = norm;
  out.method = "search";
  out.upper_bound = true;
  out.value = probe.value;
  if (probe.rank_one) out.witness_x = top_eigenvector_if_rank_one(probe.argmin);
  return out;
}

NormIndexResult norm_index(const NormDescriptor& norm, const HermitianMatrix& a,
                           const OracleConfig& cfg) {
  if (a.n() == 0) throw IndexError("norm_index: empty matrix");
  a.require_psd("norm_index");
  NormIndexResult out;
  out.norm = norm;
  const VectorR d = a.diagonal_entries();
  if ((d.array() <= 0.0).any()) {
    out.method = "zero_diagonal";
    Eigen::Index i = 0;
    d.minCoeff(&i);
    out.witness_x = VectorC::Unit(a.n(), i);
    return out;
  }
  if (a.is_diagonal(0.0)) {
    out.method = "diagonal";
    out.value = diagonal_index(norm, d);
    return out;
  }
  if (norm.kind() == NormDescriptor::Kind::Schatten) {
    if (norm.p() == 1.0) {
      out.method = "trace";
      out.value = trace_index(a);
      Eigen::Index i = 0;
      d.minCoeff(&i);
      out.witness_x = VectorC::Unit(a.n(), i);
      return out;
    }
    if (norm.p() == 2.0) return frobenius_index(a);
    if (std::isinf(norm.p())) {
      const SpectralIndexResult sp = spectral_index(a, cfg);
      out.method = method_name(sp.method);
      out.value = sp.value;
      out.witness_x = sp.witness_x;
      return out;
    }
  }
  if (norm.kind() == NormDescriptor::Kind::KyFan && norm.k() == 1) {
    const SpectralIndexResult sp = spectral_index(a, cfg);
    out.method = method_name(sp.method);
    out.value = sp.value;
    out.witness_x = sp.witness_x;
    return out;
  }
  return norm_index_search(norm, a, cfg);
}

double inf2_relaxation(const HermitianMatrix& a, const OracleConfig& cfg) {
  if (a.n() == 0) throw IndexError("inf2_relaxation: empty matrix");
  a.require_psd("inf2_relaxation");
  const MatrixC& entries = a.entries();
  const int n = a.n();
  auto top = [&](const VectorR& x) {
    const MatrixC m = entries.cwiseProduct((x * x.transpose()).cast<Complex>());
    return Eigen::SelfAdjointEigenSolver<MatrixC>(m);
  };
  SphereObjective obj;
  obj.value = [&](const VectorR& x) {
    const auto es = top(x);
    const double q = x.array().square().matrix().norm();
    return std::max(0.0, es.eigenvalues()(n - 1)) / q;
  };
  obj.gradient = [&](const VectorR& x) -> VectorR {
    const auto es = top(x);
    const double lambda = std::max(0.0, es.eigenvalues()(n - 1));
    const VectorC u = es.eigenvectors().col(n - 1);
    const MatrixC g = u.conjugate() * u.transpose();
    const VectorR dl = 2.0 * (g.cwiseProduct(entries) * x.cast<Complex>()).real();
    const double q = x.array().square().matrix().norm();
    const VectorR dq = 2.0 * x.array().cube().matrix() / q;
    return (dl * q - lambda * dq) / (q * q);
  };
  return sphere_minimize(obj, n, cfg).value;
}

std::optional<Inf2Witness> counterexample_search_inf2(const OracleConfig& cfg) {
  const int budget = std::max(cfg.sample_budget, 0);
  for (int s = 0; s < budget; ++s) {
    Rng rng(derive_seed(cfg.seed ^ 0x696e6632ULL, static_cast<std::uint64_t>(s)));
    const int n = 2 + s % 2;
    const HermitianMatrix a = random_psd(rng, n, rng.integer(1, n), false);
    if (a.is_diagonal(0.0)) continue;
    const double frob = frobenius_index(a).value;
    const double relaxed = inf2_relaxation(a, cfg);
    if (relaxed - frob > kInf2Gap) return Inf2Witness{a, relaxed, frob, relaxed - frob, s};
  }
  return std::nullopt;
}

}  // namespace hindex
