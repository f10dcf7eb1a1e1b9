#include "hindex/spectral_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hindex/minimal_index.hpp"
#include "hindex/random.hpp"
#include "simplex_eigen_barrier.hpp"

namespace hindex {

namespace {

constexpr double kTieTolerance = 1e-12;

// Index of a zero diagonal entry, if any; the index is then 0.
std::optional<int> zero_diagonal(const HermitianMatrix& a) {
  for (int i = 0; i < a.n(); ++i)
    if (a(i, i).real() <= 0.0) return i;
  return std::nullopt;
}

SpectralIndexResult zero_index(int n, int i, SpectralMethod method) {
  SpectralIndexResult out;
  out.method = method;
  out.value = 0.0;
  out.witness_x = VectorC::Unit(n, i);
  return out;
}

// |A o xx*|_sp for real x.
double rank_one_value(const MatrixC& a, const VectorR& x) {
  const MatrixC m = a.cwiseProduct((x * x.transpose()).cast<Complex>());
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// All nonempty subsets of {0..n-1} as bit masks, by size then lexicographic.
std::vector<std::uint32_t> subsets_in_order(int n) {
  std::vector<std::uint32_t> masks;
  masks.reserve((std::size_t{1} << n) - 1);
  std::vector<int> pick;
  for (int k = 1; k <= n; ++k) {
    pick.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (int i : pick) mask |= 1u << i;
      masks.push_back(mask);
      int i = k - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return masks;
}

IndexSet members(std::uint32_t mask, int n) {
  IndexSet j;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) j.push_back(i);
  return j;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  VectorR u;
};

Candidate evaluate_subset(const MatrixR& a, std::uint32_t mask, int n, const Tolerances& tol) {
  const IndexSet j = members(mask, n);
  const auto k = static_cast<Eigen::Index>(j.size());
  MatrixR sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = a(j[static_cast<std::size_t>(r)], j[static_cast<std::size_t>(c)]);
  const NnlsOutcome sol = nnls(sub, VectorR::Ones(k), tol.range * std::sqrt(static_cast<double>(k)));
  Candidate out;
  const double total = sol.u.sum();
  if (sol.feasible && total > 0.0) {
    out.value = 1.0 / total;
    out.u = sol.u;
  }
  return out;
}

void require_nonnegative_real(const HermitianMatrix& a, const char* what) {
  if (!a.is_nonnegative(0.0))
    throw IndexError(std::string(what) + ": matrix must be real with nonnegative entries");
}

SpectralIndexResult from_capacity(const MatrixC& entries, const detail::CapacityResult& cap,
                                  SpectralMethod method) {
  SpectralIndexResult out;
  out.method = method;
  const VectorR x = (cap.v / cap.v.sum()).cwiseSqrt();
  out.value = rank_one_value(entries, x);
  out.witness_x = x.cast<Complex>();
  out.lower_bound = std::min(cap.lower_bound, out.value);
  out.restarts = 1;
  out.saturation = 1.0;
  return out;
}

}  // namespace

const char* method_name(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::Combinatorial: return "combinatorial";
    case SpectralMethod::RankOneSearch: return "rank_one_search";
    case SpectralMethod::DiagonalOnly: return "diagonal_only";
  }
  return "unknown";
}

NnlsOutcome nonneg_solution(const HermitianMatrix& a, const Tolerances& tol) {
  require_nonnegative_real(a, "nonneg_solution");
  if (zero_diagonal(a)) throw IndexError("nonneg_solution: zero diagonal entry");
  const int n = a.n();
  return nnls(a.real_part(), VectorR::Ones(n), tol.range * std::sqrt(static_cast<double>(n)));
}

SpectralIndexResult spectral_index_combinatorial(const HermitianMatrix& a, int n_max, Execution exec,
                                                 const Tolerances& tol) {
  const int n = a.n();
  if (n == 0) throw IndexError("spectral_index_combinatorial: empty matrix");
  if (n > n_max || n > 30)
    throw IndexError("spectral_index_combinatorial: dimension " + std::to_string(n) +
                     " exceeds the subset limit " + std::to_string(n_max) + "; use the search method");
  require_nonnegative_real(a, "spectral_index_combinatorial");
  a.require_psd("spectral_index_combinatorial");
  if (const auto i = zero_diagonal(a)) return zero_index(n, *i, SpectralMethod::Combinatorial);

  const MatrixR real = a.real_part();
  const std::vector<std::uint32_t> masks = subsets_in_order(n);
  const auto count = static_cast<std::int64_t>(masks.size());
  std::vector<Candidate> found(masks.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t s = 0; s < count; ++s)
      found[static_cast<std::size_t>(s)] = evaluate_subset(real, masks[static_cast<std::size_t>(s)], n, tol);
  } else {
    for (std::int64_t s = 0; s < count; ++s)
      found[static_cast<std::size_t>(s)] = evaluate_subset(real, masks[static_cast<std::size_t>(s)], n, tol);
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : found) best = std::min(best, c.value);
  std::size_t pick = 0;
  while (found[pick].value > best * (1.0 + kTieTolerance)) ++pick;

  SpectralIndexResult out;
  out.method = SpectralMethod::Combinatorial;
  out.value = found[pick].value;
  out.lower_bound = best;
  const IndexSet j = members(masks[pick], n);
  out.witness_subset = j;
  out.witness_u = found[pick].u;
  VectorC x = VectorC::Zero(n);
  for (std::size_t r = 0; r < j.size(); ++r)
    x(j[r]) = std::sqrt(std::max(0.0, found[pick].u(static_cast<Eigen::Index>(r)) * out.value));
  out.witness_x = x / x.norm();
  return out;
}

SpectralIndexResult spectral_index_search(const HermitianMatrix& a, const OracleConfig&) {
  const int n = a.n();
  if (n == 0) throw IndexError("spectral_index_search: empty matrix");
  a.require_psd("spectral_index_search");
  if (const auto i = zero_diagonal(a)) return zero_index(n, *i, SpectralMethod::RankOneSearch);
  const detail::CapacityResult cap =
      detail::maximize_diagonal_capacity(psd_factor(a), VectorR::Ones(n));
  return from_capacity(a.entries(), cap, SpectralMethod::RankOneSearch);
}

DiagonalRelaxation spectral_index_diag_relax(const HermitianMatrix& a, const OracleConfig&) {
  const int n = a.n();
  if (n == 0) throw IndexError("spectral_index_diag_relax: empty matrix");
  a.require_psd("spectral_index_diag_relax");
  DiagonalRelaxation out;
  if (zero_diagonal(a)) {
    out.d = a.diagonal_entries();
    return out;
  }
  const detail::CapacityResult cap =
      detail::maximize_diagonal_capacity(psd_factor(a), a.diagonal_entries().cwiseInverse());
  out.value = cap.value;
  out.lower_bound = std::min(cap.lower_bound, cap.value);
  out.d = cap.v.cwiseInverse();
  return out;
}

SpectralIndexResult spectral_index_factored(const MatrixC& b, const OracleConfig&) {
  const auto n = static_cast<int>(b.rows());
  if (n == 0) throw IndexError("spectral_index_factored: empty factor");
  const VectorR rows = b.rowwise().squaredNorm();
  for (int i = 0; i < n; ++i)
    if (rows(i) == 0.0) return zero_index(n, i, SpectralMethod::RankOneSearch);
  const detail::CapacityResult cap = detail::maximize_diagonal_capacity(b, VectorR::Ones(n));
  SpectralIndexResult out;
  out.method = SpectralMethod::RankOneSearch;
  const VectorR x = (cap.v / cap.v.sum()).cwiseSqrt();
  const MatrixC dxb = x.cast<Complex>().asDiagonal() * b;
  const double top = singular_values(dxb)(0);
  out.value = top * top;
  out.witness_x = x.cast<Complex>();
  out.lower_bound = std::min(cap.lower_bound, out.value);
  out.restarts = 1;
  out.saturation = 1.0;
  return out;
}

bool two_by_two_characterization(const HermitianMatrix& a, double tol) {
  if (a.n() != 2) throw IndexError("two_by_two_characterization: matrix must be 2x2");
  const double p = a(0, 0).real();
  const double c = a(1, 1).real();
  const Complex b = a(0, 1);
  const double scale = std::max({1.0, std::abs(p), std::abs(c)});
  const double m = std::min(p, c);
  if (std::abs(b.imag()) > tol * scale) return false;
  if (m <= tol * scale) return false;
  return b.real() >= -tol * scale && b.real() <= m + tol * scale;
}

SpectralIndexResult spectral_index(const HermitianMatrix& a, const OracleConfig& cfg) {
  if (a.n() <= kDefaultSubsetLimit && a.is_nonnegative(0.0))
    return spectral_index_combinatorial(a, kDefaultSubsetLimit, cfg.exec);
  return spectral_index_search(a, cfg);
}

ConjectureProbe probe_conjecture(const OracleConfig& cfg) {
  ConjectureProbe out;
  const int budget = std::max(cfg.sample_budget, 0);
  for (int s = 0; s < budget; ++s) {
    Rng rng(derive_seed(cfg.seed ^ 0x636f6e6aULL, static_cast<std::uint64_t>(s)));
    const int n = 2 + s % 3;
    HermitianMatrix a;
    if (s % 2 == 0) {
      a = random_psd(rng, n, rng.integer(1, n), true);
    } else {
      // a nonnegative equality case, tilted by a small Hermitian bump
      const HermitianMatrix base = random_nonnegative_psd(rng, n);
      const double eps = std::pow(10.0, -1.0 - 4.0 * rng.uniform());
      const MatrixC h = random_gaussian(rng, n, n, true);
      MatrixC m = base.entries() + eps * (h + h.adjoint());
      const double shift = std::max(0.0, -HermitianMatrix(m).min_eigenvalue());
      m += shift * MatrixC::Identity(n, n);
      a = HermitianMatrix(m);
    }
    ++out.samples;
    if (!a.is_psd()) continue;
    const double mi = minimal_index(a).value;
    if (mi <= 0.0) continue;
    const double sp = spectral_index_search(a, cfg).value;
    if (std::abs(sp - mi) > 1e-7 * std::max(1.0, sp)) continue;
    ++out.equal_cases;
    if (!a.is_nonnegative(0.0) && !out.counterexample) {
      out.counterexample = a;
      out.minimal = mi;
      out.spectral = sp;
    }
  }
  return out;
}

}  // namespace hindex
