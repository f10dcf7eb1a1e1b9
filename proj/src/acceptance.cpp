#include "hindex/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hindex/minimal_index.hpp"
#include "hindex/norm_index.hpp"
#include "hindex/operator_inequality.hpp"
#include "hindex/random.hpp"
#include "hindex/spectral_index.hpp"

namespace hindex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// positive value, log-uniform on [1/span, span]
double log_uniform(Rng& rng, double span) { return std::exp((2.0 * rng.uniform() - 1.0) * std::log(span)); }

CheckResult ac1_reference_fixture() {
  CheckResult r{"AC1", "2x2 fixture: I(A) = 0.2 on three paths, I(sp,A) = 1 by search", false, false, "", 0};
  MatrixR m(2, 2);
  m << 2, -1, -1, 1;
  const HermitianMatrix a(m);
  const double pinv = minimal_index(a).value;
  const double simplex = minimal_index_simplex(a).value;
  const double det = minimal_index_determinant(a);
  const double spread = std::max({pinv, simplex, det}) - std::min({pinv, simplex, det});
  const double worst = std::max({std::abs(pinv - 0.2), std::abs(simplex - 0.2), std::abs(det - 0.2)});
  const auto t0 = Clock::now();
  const double sp = spectral_index_search(a).value;
  const double elapsed = seconds_since(t0);
  r.passed = spread <= 1e-10 && worst <= 1e-10 && std::abs(sp - 1.0) <= 1e-6 && elapsed < 1.0;
  r.detail = fmt("I(A) max error %.3g, path spread %.3g; ", worst, spread) +
             fmt("I(sp,A) = %.12g in %.3g s", sp, elapsed);
  return r;
}

CheckResult ac2_frobenius_identity(Rng& rng, bool quick) {
  CheckResult r{"AC2", "I(2,A)^2 = I(sp, conj(A) o A) on random complex PSD", false, false, "", 0};
  const int count = quick ? 20 : 200;
  const int hi = quick ? 3 : 5;
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int s = 0; s < count; ++s) {
    const int n = 2 + s % (hi - 1);
    const HermitianMatrix a = random_psd(rng, n, rng.integer(1, n), true);
    const double f = frobenius_index(a).value;
    const double sp = spectral_index_search(abs_squared(a)).value;
    worst = std::max(worst, std::abs(f * f - sp));
  }
  const double elapsed = seconds_since(t0);
  r.passed = worst <= 1e-7 && elapsed < 30.0;
  r.detail = fmt("%g instances, max |I2^2 - Isp| = %.3g, %.3g s", count, worst, elapsed);
  return r;
}

CheckResult ac3_nonnegative_equivalence(Rng& rng, bool quick) {
  CheckResult r{"AC3", "NNLS feasible <=> I(sp,A) = I(A) on nonnegative PSD", false, false, "", 0};
  const int count = quick ? 20 : 100;
  const int hi = quick ? 3 : 5;
  int discordant = 0;
  int absolute_discordant = 0;
  int feasible = 0;
  for (int s = 0; s < count; ++s) {
    const int n = 2 + s % (hi - 1);
    const HermitianMatrix a = random_nonnegative_psd(rng, n);
    const bool ok = nonneg_solution(a).feasible;
    const double spectral = spectral_index_search(a).value;
    const double gap = std::abs(spectral - minimal_index(a).value);
    feasible += ok ? 1 : 0;
    // gap measured on A / I(sp,A)
    if (ok != (gap <= 1e-7 * spectral)) ++discordant;
    if (ok != (gap <= 1e-7)) ++absolute_discordant;
  }
  r.passed = discordant == 0;
  r.detail = fmt("%g instances (%g feasible), %g discordant", count, feasible, discordant) +
             fmt(" (%g at unscaled 1e-7)", absolute_discordant);
  return r;
}

CheckResult ac4_kronecker(Rng& rng, bool quick) {
  CheckResult r{"AC4", "I(A (x) B) = I(A) I(B)", false, false, "", 0};
  const int count = quick ? 10 : 50;
  double worst = 0.0;
  int zero = 0;
  for (int s = 0; s < count; ++s) {
    const int n = rng.integer(1, 3);
    const int m = rng.integer(1, 3);
    const HermitianMatrix a = random_psd(rng, n, rng.integer(1, n), s % 2 == 0);
    const HermitianMatrix b = random_psd(rng, m, rng.integer(1, m), s % 3 == 0);
    const auto [product, kron] = kronecker_index_check(a, b);
    if (kron == 0.0) ++zero;
    worst = std::max(worst, std::abs(product - kron));
  }
  r.passed = worst <= 1e-8;
  r.detail = fmt("%g pairs (%g with index 0), max error %.3g", count, zero, worst);
  return r;
}

CheckResult ac5_inflation(Rng& rng, bool quick) {
  CheckResult r{"AC5", "I(sp, A^(m)) = I(sp, A) for m = 2, 3 via the factored form", false, false, "", 0};
  const int count = quick ? 3 : 10;
  double worst = 0.0;
  for (int s = 0; s < count; ++s) {
    const HermitianMatrix a = random_psd(rng, 3, rng.integer(1, 3), true);
    const double base = spectral_index_search(a).value;
    const MatrixC f = psd_factor(a);
    for (int m = 2; m <= 3; ++m) {
      MatrixC stacked(3 * m, f.cols());
      for (int k = 0; k < m; ++k) stacked.middleRows(3 * k, 3) = f;
      worst = std::max(worst, std::abs(spectral_index_factored(stacked).value - base));
    }
  }
  r.passed = worst <= 1e-6;
  r.detail = fmt("%g matrices, max error %.3g", count, worst);
  return r;
}

CheckResult ac6_lambda_closed_forms(Rng& rng, bool quick) {
  CheckResult r{"AC6", "Lambda-matrix closed form vs subset algorithm; x = (2, 1/2) gives 3.125", false,
                false, "", 0};
  const int count = quick ? 20 : 100;
  const int hi = quick ? 3 : 5;
  double worst = 0.0;
  for (int s = 0; s < count; ++s) {
    const int n = 1 + s % hi;
    VectorR x(n);
    for (int i = 0; i < n; ++i) x(i) = log_uniform(rng, 4.0);
    const double closed = lambda_spectral_index(x).value;
    const double comb = spectral_index_combinatorial(lambda_matrix(x)).value;
    worst = std::max(worst, std::abs(closed - comb));
  }
  VectorR fixture(2);
  fixture << 2.0, 0.5;
  const double closed = lambda_spectral_index(fixture).value;
  const double comb = spectral_index_combinatorial(lambda_matrix(fixture)).value;
  r.passed = worst <= 1e-7 && closed == 3.125 && std::abs(comb - 3.125) <= 1e-7;
  r.detail = fmt("%g vectors, max error %.3g; fixture closed form %.12g", count, worst, closed) +
             fmt(", subsets %.12g", comb);
  return r;
}

CheckResult ac7_shortcut() {
  CheckResult r{"AC7", "M(S) for spectrum {0.5, 1/3} is 4.25", false, false, "", 0};
  const double m = best_constant({{0.5, 1.0 / 3.0}}).value;
  r.passed = m == 4.25;
  r.detail = fmt("M(S) = %.17g", m);
  return r;
}

CheckResult ac8_operator_audit(Rng& rng, bool quick) {
  CheckResult r{"AC8", "|STS + S^-1 T S^-1| >= M(S)|T| audit with tight witnesses", false, false, "", 0};
  const int count = quick ? 50 : 500;
  const int n = 4;
  int violations = 0;
  double worst_tight = 0.0;
  double worst_hadamard = 0.0;
  const auto t0 = Clock::now();
  for (int s = 0; s < count; ++s) {
    VectorR d(n);
    for (int i = 0; i < n; ++i) d(i) = log_uniform(rng, 4.0);
    const HermitianMatrix t = random_psd(rng, n, rng.integer(1, n), true);
    const InequalityCheck c = verify_inequality(d, t);
    if (c.lhs < c.rhs - 1e-9) ++violations;
    worst_hadamard = std::max(worst_hadamard, c.hadamard_error / std::max(1.0, c.lhs));
    const HermitianMatrix tight = tight_witness(d);
    const InequalityCheck e = verify_inequality(d, tight);
    worst_tight = std::max(worst_tight, std::abs(e.lhs - e.rhs));
  }
  const double elapsed = seconds_since(t0);
  r.passed = violations == 0 && worst_tight <= 1e-6 && worst_hadamard <= 1e-10 && elapsed < 30.0;
  r.detail = fmt("%g trials, %g violations, ", count, violations) +
             fmt("tight ratio error %.3g, Hadamard identity error %.3g, ", worst_tight, worst_hadamard) +
             fmt("%.3g s", elapsed);
  return r;
}

CheckResult ac9_sandwich(Rng& rng, bool quick) {
  CheckResult r{"AC9", "I(A) <= I(2,A), I(A) <= I(sp,A) <= min A_ii, I(1,A) = min A_ii, lower bounds",
                false, false, "", 0};
  const int count = quick ? 20 : 100;
  const int hi = quick ? 3 : 5;
  int violations = 0;
  const NormDescriptor norms[] = {NormDescriptor::trace_norm(), NormDescriptor::frobenius(),
                                  NormDescriptor::spectral()};
  for (int s = 0; s < count; ++s) {
    const int n = 2 + s % (hi - 1);
    const HermitianMatrix a =
        s % 2 == 0 ? random_psd(rng, n, rng.integer(1, n), true) : random_nonnegative_psd(rng, n);
    const double min_diag = a.diagonal_entries().minCoeff();
    const double eps = 1e-9 * std::max(1.0, min_diag);
    const double i0 = minimal_index(a).value;
    const double i1 = trace_index(a);
    const double i2 = frobenius_index(a).value;
    const double isp = spectral_index(a).value;
    bool ok = i0 <= i2 + eps && i0 <= isp + eps && isp <= min_diag + eps && i1 == min_diag;
    const double computed[] = {i1, i2, isp};
    for (int k = 0; k < 3; ++k) ok = ok && norm_index_lower_bound(norms[k], a) <= computed[k] + eps;
    if (!ok) ++violations;
  }
  r.passed = violations == 0;
  r.detail = fmt("%g instances, %g violations", count, violations);
  return r;
}

CheckResult ac10_diagonal(Rng& rng, bool quick, std::uint64_t seed) {
  CheckResult r{"AC10", "diagonal closed form vs random PSD probe, p in {1, 1.5, 2, 3, inf}", false, false,
                "", 0};
  const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
  const int per_p = quick ? 1 : 2;
  const int hi = quick ? 3 : 4;
  double worst = 0.0;
  double below = 0.0;
  int k = 0;
  for (double p : ps) {
    const NormDescriptor norm = NormDescriptor::schatten(p);
    for (int s = 0; s < per_p; ++s, ++k) {
      const int n = 2 + k % (hi - 1);
      VectorR d(n);
      for (int i = 0; i < n; ++i) d(i) = log_uniform(rng, 4.0);
      const MatrixC dm = d.cast<Complex>().asDiagonal();
      OracleConfig cfg;
      cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(k));
      if (quick) cfg.sample_budget = 1000;
      auto objective = [&](const HermitianMatrix& b) {
        return norm.evaluate(MatrixC(dm.cwiseProduct(b.entries())));
      };
      const double probe = random_psd_probe(objective, n, cfg, norm).value;
      const double closed = diagonal_index(norm, d);
      worst = std::max(worst, probe - closed);
      below = std::max(below, closed - probe);
    }
  }
  r.passed = worst <= 1e-5 && below <= 1e-9;
  r.detail = fmt("%g diagonals, max probe excess %.3g, max probe deficit %.3g", k, worst, below);
  return r;
}

CheckResult ac11_hunt(std::uint64_t seed) {
  CheckResult r{"AC11", "diagonal relaxation of the 2-norm index exceeds I(2,A) somewhere", false, false,
                "", 0};
  OracleConfig cfg;
  cfg.seed = seed;
  const auto found = counterexample_search_inf2(cfg);
  if (!found) {
    r.inconclusive = true;
    r.detail = fmt("no witness in %g samples", cfg.sample_budget);
    return r;
  }
  r.passed = found->gap > 1e-3;
  r.detail = fmt("sample %g (n = %g): relaxation %.12g", found->sample, found->a.n(), found->relaxed) +
             fmt(", I(2,A) %.12g, gap %.6g", found->frobenius, found->gap);
  return r;
}

}  // namespace

const char* status_label(const CheckResult& r) {
  if (r.inconclusive) return "INCONCLUSIVE";
  return r.passed ? "PASS" : "FAIL";
}

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options,
                                        const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  const bool q = options.quick;
  auto stream = [&](int k) { return Rng(derive_seed(options.seed, static_cast<std::uint64_t>(k))); };
  auto record = [&](const char* id, auto&& check) {
    const auto t0 = Clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.passed = false;
      r.inconclusive = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.id = id;
    r.seconds = seconds_since(t0);
    if (on_result) on_result(r);
    results.push_back(r);
  };

  record("AC1", [&] { return ac1_reference_fixture(); });
  record("AC2", [&] { Rng g = stream(2); return ac2_frobenius_identity(g, q); });
  record("AC3", [&] { Rng g = stream(3); return ac3_nonnegative_equivalence(g, q); });
  record("AC4", [&] { Rng g = stream(4); return ac4_kronecker(g, q); });
  record("AC5", [&] { Rng g = stream(5); return ac5_inflation(g, q); });
  record("AC6", [&] { Rng g = stream(6); return ac6_lambda_closed_forms(g, q); });
  record("AC7", [&] { return ac7_shortcut(); });
  record("AC8", [&] { Rng g = stream(8); return ac8_operator_audit(g, q); });
  record("AC9", [&] { Rng g = stream(9); return ac9_sandwich(g, q); });
  record("AC10", [&] { Rng g = stream(10); return ac10_diagonal(g, q, options.seed); });
  record("AC11", [&] { return ac11_hunt(options.seed); });
  return results;
}

}  // namespace hindex
