#include <gtest/gtest.h>

#include <cmath>

#include "hindex/norm_index.hpp"
#include "hindex/oracle.hpp"
#include "support.hpp"

using namespace hindex;
using namespace hindex::testing;

namespace {

OracleConfig small_config(Execution exec = Execution::Parallel) {
  OracleConfig cfg;
  cfg.restarts = 16;
  cfg.sample_budget = 300;
  cfg.exec = exec;
  return cfg;
}

SphereObjective spectral_objective(const MatrixC& a) {
  SphereObjective obj;
  obj.value = [a](const VectorR& x) { return rank_one_spectral(a, x); };
  return obj;
}

}  // namespace

TEST(SphereMinimize, DiagonalFrobeniusObjective) {
  // |diag(1,2) o xx*|_2 = sqrt(x1^4 + 4 x2^4)
  SphereObjective obj;
  obj.value = [](const VectorR& x) { return std::sqrt(std::pow(x(0), 4) + 4.0 * std::pow(x(1), 4)); };
  const SphereResult r = sphere_minimize(obj, 2, small_config());
  EXPECT_NEAR(r.value, 2.0 / std::sqrt(5.0), 1e-8);
  EXPECT_NEAR(r.argmin.norm(), 1.0, 1e-12);
}

TEST(SphereMinimize, ConstantObjective) {
  SphereObjective obj;
  obj.value = [](const VectorR&) { return 3.5; };
  EXPECT_EQ(sphere_minimize(obj, 4, small_config()).value, 3.5);
}

TEST(SphereMinimize, TwoByTwoSpectral) {
  const SphereResult r = sphere_minimize(spectral_objective(HermitianMatrix(mat2(2, -1, -1, 1)).entries()), 2,
                                         small_config());
  EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(SphereMinimize, DeterministicAcrossRunsAndPolicies) {
  Rng rng(31);
  const HermitianMatrix a = random_psd(rng, 4, 2, false);
  const SphereResult p1 = sphere_minimize(spectral_objective(a.entries()), 4, small_config());
  const SphereResult p2 = sphere_minimize(spectral_objective(a.entries()), 4, small_config());
  const SphereResult s = sphere_minimize(spectral_objective(a.entries()), 4, small_config(Execution::Serial));
  EXPECT_EQ(p1.value, p2.value);
  EXPECT_EQ(p1.argmin, p2.argmin);
  EXPECT_EQ(p1.value, s.value);
  EXPECT_EQ(p1.restart_values, s.restart_values);
}

TEST(SphereMinimize, SaturationOnTestInstances) {
  Rng rng(32);
  for (int t = 0; t < 5; ++t) {
    const HermitianMatrix a = random_psd(rng, 3, 3, false);
    const SphereResult r = sphere_minimize(spectral_objective(a.entries()), 3, small_config());
    EXPECT_GE(r.saturation, 0.25);
    EXPECT_EQ(static_cast<int>(r.restart_values.size()), r.restarts_run);
  }
}

TEST(SphereMinimize, RejectsEmptyDimension) {
  EXPECT_THROW(sphere_minimize(spectral_objective(MatrixC::Identity(1, 1)), 0, small_config()), IndexError);
}

TEST(RandomPsdProbe, TraceNormProbeNeverBelowMinDiagonal) {
  Rng rng(33);
  const NormDescriptor n = NormDescriptor::trace_norm();
  for (int t = 0; t < 3; ++t) {
    const HermitianMatrix a = random_psd(rng, 3, 3, true);
    const auto obj = [&](const HermitianMatrix& b) { return n.evaluate(hadamard(a, b)); };
    const ProbeResult r = random_psd_probe(obj, 3, small_config(), n);
    EXPECT_GE(r.value, a.diagonal_entries().minCoeff() - 1e-9);
    EXPECT_NEAR(r.value, a.diagonal_entries().minCoeff(), 1e-6);
  }
}

TEST(RandomPsdProbe, OnesMatrixNeverBelowOne) {
  for (const auto& n : {NormDescriptor::trace_norm(), NormDescriptor::frobenius(), NormDescriptor::spectral(),
                        NormDescriptor::ky_fan(2)}) {
    const HermitianMatrix p = HermitianMatrix::ones(3);
    const auto obj = [&](const HermitianMatrix& b) { return n.evaluate(hadamard(p, b)); };
    EXPECT_GE(random_psd_probe(obj, 3, small_config(), n).value, 1.0 - 1e-6) << n.name();
  }
}

TEST(RandomPsdProbe, FrobeniusProbeNotBelowFrobeniusIndex) {
  Rng rng(34);
  const NormDescriptor n = NormDescriptor::frobenius();
  for (int t = 0; t < 3; ++t) {
    const HermitianMatrix a = random_psd(rng, 3, 3, true);
    const auto obj = [&](const HermitianMatrix& b) { return n.evaluate(hadamard(a, b)); };
    EXPECT_GE(random_psd_probe(obj, 3, small_config(), n).value, frobenius_index(a).value - 1e-6);
  }
}

TEST(RandomPsdProbe, Deterministic) {
  Rng rng(35);
  const HermitianMatrix a = random_psd(rng, 3, 2, true);
  const NormDescriptor n = NormDescriptor::schatten(3);
  const auto obj = [&](const HermitianMatrix& b) { return n.evaluate(hadamard(a, b)); };
  const ProbeResult r1 = random_psd_probe(obj, 3, small_config(), n);
  const ProbeResult r2 = random_psd_probe(obj, 3, small_config(Execution::Serial), n);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.argmin, r2.argmin);
  EXPECT_EQ(r1.samples, 300);
}

TEST(SimplexQp, Hyperplane) {
  const QpResult r = simplex_qp(MatrixR::Identity(2, 2), SimplexDomain::Hyperplane);
  EXPECT_NEAR(r.value, 0.5, 1e-14);
  EXPECT_NEAR(r.argmin(0), 0.5, 1e-14);
  const QpResult s = simplex_qp(mat2(2, -1, -1, 1), SimplexDomain::Hyperplane);
  EXPECT_NEAR(s.value, 0.2, 1e-14);
  EXPECT_LE((mat2(2, -1, -1, 1) * s.argmin - VectorR::Constant(2, 0.2)).norm(), 1e-12);
}

TEST(SimplexQp, HyperplaneStationarity) {
  Rng rng(36);
  for (int t = 0; t < 50; ++t) {
    const int n = rng.integer(2, 6);
    const MatrixR b = random_psd(rng, n, rng.integer(1, n), false).real_part();
    const QpResult r = simplex_qp(b, SimplexDomain::Hyperplane);
    EXPECT_NEAR(r.argmin.sum(), 1.0, 1e-10);
    EXPECT_LE((b * r.argmin - r.value * VectorR::Ones(n)).norm(), 1e-7);
  }
}

TEST(SimplexQp, PositiveSimplexGivesFrobeniusIndexSquared) {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.integer(2, 4);
    const HermitianMatrix a = random_psd(rng, n, rng.integer(1, n), true);
    const MatrixR b = abs_squared(a).real_part();
    const QpResult r = simplex_qp(b, SimplexDomain::Positive);
    const double f = frobenius_index(a).value;
    EXPECT_NEAR(r.value, f * f, 1e-8);
    EXPECT_GE(r.argmin.minCoeff(), 0.0);
    EXPECT_NEAR(r.argmin.sum(), 1.0, 1e-12);
  }
}

TEST(SimplexQp, PositiveSimplexDescentBranch) {
  // n > 12 runs projected gradient. For B = diag(B1, c I_9) the minimum
  // splits across the blocks as (1/m + 9/c)^-1, m the minimum for B1.
  Rng rng(38);
  for (int t = 0; t < 8; ++t) {
    const MatrixR g = random_psd(rng, 4, 4, false).real_part().cwiseAbs();
    const MatrixR b = g * g.transpose();
    const double m = simplex_qp(b, SimplexDomain::Positive).value;
    const double c = (t % 2 ? 1e-3 * m : 10.0 * b.maxCoeff()) * (1.0 + rng.uniform());
    MatrixR big = MatrixR::Zero(13, 13);
    big.topLeftCorner(4, 4) = b;
    big.bottomRightCorner(9, 9) = c * MatrixR::Identity(9, 9);
    const QpResult descent = simplex_qp(big, SimplexDomain::Positive);
    EXPECT_NEAR(descent.value, 1.0 / (1.0 / m + 9.0 / c), 1e-8 * m);
    EXPECT_NEAR(descent.argmin.sum(), 1.0, 1e-12);
    EXPECT_GE(descent.argmin.minCoeff(), 0.0);
  }
}

TEST(HyperplaneQp, SingularMatrix) {
  // p is outside range diag(1, 0) but e_2 lies on the hyperplane
  const HyperplaneQpResult r = hyperplane_qp(HermitianMatrix(mat2(1, 0, 0, 0)).entries());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_NEAR(std::abs(r.argmin(0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.argmin(1) - 1.0), 0.0, 1e-12);
}
