#include <gtest/gtest.h>

#include <cmath>

#include "hindex/matrix.hpp"
#include "hindex/norms.hpp"
#include "hindex/random.hpp"
#include "support.hpp"

using namespace hindex;
using namespace hindex::testing;

TEST(HermitianMatrix, ProjectsOntoHermitianPart) {
  MatrixC m(2, 2);
  m << Complex(1, 0), Complex(2, 1), Complex(0, 0), Complex(3, 0);
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
  EXPECT_EQ(h(0, 1), Complex(1, 0.5));
}

TEST(HermitianMatrix, ProjectionIsIdempotent) {
  Rng rng(1);
  for (int s = 0; s < 20; ++s) {
    const HermitianMatrix a = random_psd(rng, 4, 3, true);
    const HermitianMatrix b(a.entries());
    EXPECT_EQ(a.entries(), b.entries());
  }
}

TEST(HermitianMatrix, PsdClassification) {
  EXPECT_TRUE(HermitianMatrix(mat2(2, -1, -1, 1)).is_psd());
  EXPECT_FALSE(HermitianMatrix(mat2(1, 2, 2, 1)).is_psd());
  // within -1e-9 * max(1, trace) counts as PSD
  EXPECT_TRUE(HermitianMatrix(mat2(1, 0, 0, -5e-10)).is_psd());
  EXPECT_FALSE(HermitianMatrix(mat2(1, 0, 0, -5e-9)).is_psd());
  EXPECT_THROW(HermitianMatrix(mat2(1, 2, 2, 1)).require_psd("x"), IndexError);
}

TEST(HermitianMatrix, Constructors) {
  EXPECT_EQ(HermitianMatrix::identity(3).entries(), MatrixC::Identity(3, 3));
  EXPECT_EQ(HermitianMatrix::ones(3).entries(), MatrixC::Ones(3, 3));
  const VectorC x = vec({1, 2}).cast<Complex>();
  EXPECT_EQ(HermitianMatrix::rank_one(x).real_part(), mat2(1, 2, 2, 4));
  EXPECT_EQ(ones(4), VectorC::Ones(4));
}

TEST(Hadamard, IdentityMasksOffDiagonal) {
  Rng rng(2);
  const HermitianMatrix b = random_psd(rng, 2, 2, true);
  const HermitianMatrix r = hadamard(HermitianMatrix::identity(2), b);
  EXPECT_EQ(r(0, 1), Complex(0, 0));
  EXPECT_EQ(r(0, 0), b(0, 0));
  EXPECT_EQ(r(1, 1), b(1, 1));
}

TEST(Hadamard, OnesIsUnit) {
  Rng rng(3);
  const HermitianMatrix a = random_psd(rng, 4, 2, true);
  EXPECT_EQ(hadamard(a, HermitianMatrix::ones(4)).entries(), a.entries());
}

TEST(Hadamard, SchurClosure) {
  Rng rng(4);
  for (int s = 0; s < 100; ++s) {
    const int n = 1 + s % 6;
    const HermitianMatrix a = random_psd(rng, n, rng.integer(1, n), s % 2 == 0);
    const HermitianMatrix b = random_psd(rng, n, rng.integer(1, n), s % 3 == 0);
    const HermitianMatrix c = hadamard(a, b);
    EXPECT_TRUE(c.is_psd());
    EXPECT_GE(min_eigenvalue(c.entries()), -1e-9 * std::max(1.0, c.trace()));
  }
}

TEST(Hadamard, DimensionMismatchThrows) {
  EXPECT_THROW(hadamard(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), IndexError);
}

TEST(Kronecker, SmallCases) {
  EXPECT_EQ(kronecker(HermitianMatrix::identity(2), HermitianMatrix::identity(2)).entries(),
            MatrixC::Identity(4, 4));
  EXPECT_EQ(kronecker(HermitianMatrix::ones(2), HermitianMatrix::ones(2)).entries(), MatrixC::Ones(4, 4));
}

TEST(Kronecker, MixedProductWithHadamard) {
  Rng rng(5);
  for (int s = 0; s < 10; ++s) {
    const HermitianMatrix a = random_psd(rng, 2, 2, true);
    const HermitianMatrix b = random_psd(rng, 2, 2, true);
    const HermitianMatrix c = random_psd(rng, 2, 1, true);
    const HermitianMatrix d = random_psd(rng, 2, 2, false);
    const MatrixC lhs = hadamard(kronecker(a, b), kronecker(c, d)).entries();
    const MatrixC rhs = kronecker(hadamard(a, c), hadamard(b, d)).entries();
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Kronecker, PsdInputsGivePsd) {
  Rng rng(6);
  for (int s = 0; s < 20; ++s) {
    const int n = rng.integer(1, 4);
    const int m = rng.integer(1, 4);
    const HermitianMatrix k = kronecker(random_psd(rng, n, 1, true), random_psd(rng, m, m, true));
    EXPECT_EQ(k.n(), n * m);
    EXPECT_GE(min_eigenvalue(k.entries()), -1e-9 * std::max(1.0, k.trace()));
  }
}

TEST(PrincipalSubmatrix, Cases) {
  const HermitianMatrix a(mat2(2, -1, -1, 1));
  EXPECT_EQ(principal_submatrix(a, {0, 1}).entries(), a.entries());
  EXPECT_EQ(principal_submatrix(a, {1}).entries()(0, 0), Complex(1, 0));
  Rng rng(7);
  const HermitianMatrix b = random_psd(rng, 4, 4, true);
  const HermitianMatrix sub = principal_submatrix(b, {0, 2, 3});
  EXPECT_EQ(sub(1, 2), b(2, 3));
  EXPECT_EQ(sub(0, 0), b(0, 0));
  EXPECT_THROW(principal_submatrix(a, {}), IndexError);
  EXPECT_THROW(principal_submatrix(a, {2}), IndexError);
  EXPECT_THROW(principal_submatrix(a, {1, 0}), IndexError);
}

TEST(UnimodularConjugate, Cases) {
  const HermitianMatrix a(mat2(2, -1, -1, 1));
  EXPECT_EQ(unimodular_conjugate(a, ones(2)).entries(), a.entries());
  VectorC w(2);
  w << 1.0, -1.0;
  EXPECT_EQ(unimodular_conjugate(a, w).real_part(), mat2(2, 1, 1, 1));
  w << 1.0, 0.5;
  EXPECT_THROW(unimodular_conjugate(a, w), IndexError);
}

TEST(UnimodularConjugate, PreservesSingularValuesAndNorms) {
  Rng rng(8);
  const NormDescriptor norms[] = {NormDescriptor::trace_norm(), NormDescriptor::schatten(1.5),
                                  NormDescriptor::frobenius(), NormDescriptor::spectral(),
                                  NormDescriptor::ky_fan(2)};
  for (int s = 0; s < 20; ++s) {
    const HermitianMatrix c = random_psd(rng, 4, 3, true);
    VectorC w(4);
    for (int i = 0; i < 4; ++i) w(i) = std::polar(1.0, 2.0 * M_PI * rng.uniform());
    const HermitianMatrix d = unimodular_conjugate(c, w);
    EXPECT_LE((singular_values(d.entries()) - singular_values(c.entries())).cwiseAbs().maxCoeff(), 1e-10);
    for (const auto& n : norms) EXPECT_NEAR(n.evaluate(d), n.evaluate(c), 1e-10);
  }
}

TEST(Helpers, AbsSquaredAndInflate) {
  MatrixC m(2, 2);
  m << 2.0, Complex(1, 1), Complex(1, -1), 3.0;
  const HermitianMatrix a(m);
  EXPECT_EQ(abs_squared(a).real_part(), mat2(4, 2, 2, 9));
  const HermitianMatrix inf = inflate(a, 3);
  EXPECT_EQ(inf.n(), 6);
  EXPECT_EQ(inf.entries(), kronecker(HermitianMatrix::ones(3), a).entries());
  EXPECT_THROW(inflate(a, 0), IndexError);
}

TEST(Helpers, PsdFactorAndKernel) {
  Rng rng(9);
  const HermitianMatrix a = random_psd(rng, 5, 2, true);
  const MatrixC b = psd_factor(a);
  EXPECT_EQ(b.cols(), 2);
  EXPECT_LE((b * b.adjoint() - a.entries()).cwiseAbs().maxCoeff(), 1e-10);
  const MatrixC q = kernel_projector(a);
  EXPECT_NEAR(q.trace().real(), 3.0, 1e-10);
  EXPECT_LE((a.entries() * q).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((q * q - q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Helpers, PseudoSolve) {
  const HermitianMatrix a(mat2(2, -1, -1, 1));
  const VectorC y = pseudo_solve(a, ones(2));
  EXPECT_NEAR(y(0).real(), 2.0, 1e-12);
  EXPECT_NEAR(y(1).real(), 3.0, 1e-12);
  // least squares on a singular matrix: diag(1, 0) y = (1, 1) -> y = (1, 0)
  const VectorC z = pseudo_solve(HermitianMatrix(mat2(1, 0, 0, 0)), ones(2));
  EXPECT_NEAR(std::abs(z(0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(z(1)), 0.0, 1e-12);
}

// ---------------------------------------------------------------------------
// norms

TEST(Norms, NormalizedAtE11) {
  MatrixC e = MatrixC::Zero(3, 3);
  e(0, 0) = 1.0;
  for (const auto& n : {NormDescriptor::trace_norm(), NormDescriptor::schatten(3), NormDescriptor::frobenius(),
                        NormDescriptor::spectral(), NormDescriptor::ky_fan(1), NormDescriptor::ky_fan(2),
                        NormDescriptor::ky_fan(3)})
    EXPECT_DOUBLE_EQ(n.evaluate(e), 1.0) << n.name();
}

TEST(Norms, ClosedValues) {
  MatrixC d = MatrixC::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 4.0;
  EXPECT_NEAR(NormDescriptor::frobenius().evaluate(d), 5.0, 1e-14);
  EXPECT_NEAR(NormDescriptor::spectral().evaluate(d), 4.0, 1e-14);
  EXPECT_NEAR(NormDescriptor::trace_norm().evaluate(d), 7.0, 1e-14);
  EXPECT_NEAR(NormDescriptor::ky_fan(1).evaluate(d), 4.0, 1e-14);
  EXPECT_NEAR(norm_eval(NormDescriptor::ky_fan(2), d), 7.0, 1e-14);
}

TEST(Norms, TraceNormOfPsdIsTrace) {
  Rng rng(10);
  for (int s = 0; s < 20; ++s) {
    const HermitianMatrix b = random_psd(rng, 4, rng.integer(1, 4), true);
    EXPECT_NEAR(NormDescriptor::trace_norm().evaluate(b), b.trace(), 1e-10 * b.trace());
  }
}

TEST(Norms, PositiveDefiniteness) {
  Rng rng(11);
  const NormDescriptor n = NormDescriptor::schatten(2.5);
  EXPECT_EQ(n.evaluate(MatrixC::Zero(3, 3)), 0.0);
  EXPECT_GT(n.evaluate(random_gaussian(rng, 3, 3, true)), 0.0);
}

TEST(Norms, UnitaryInvariance) {
  Rng rng(12);
  for (const auto& n : {NormDescriptor::trace_norm(), NormDescriptor::schatten(1.5), NormDescriptor::frobenius(),
                        NormDescriptor::spectral(), NormDescriptor::ky_fan(2)}) {
    for (int s = 0; s < 10; ++s) {
      const MatrixC m = random_gaussian(rng, 4, 4, true);
      const MatrixC u = random_unitary(rng, 4);
      const MatrixC v = random_unitary(rng, 4);
      EXPECT_NEAR(n.evaluate(MatrixC(u * m * v)), n.evaluate(m), 1e-10 * n.evaluate(m)) << n.name();
    }
  }
}

TEST(Norms, MonotoneOnPsdOrder) {
  Rng rng(13);
  for (const auto& n : {NormDescriptor::trace_norm(), NormDescriptor::schatten(3), NormDescriptor::frobenius(),
                        NormDescriptor::spectral(), NormDescriptor::ky_fan(2)}) {
    for (int s = 0; s < 20; ++s) {
      const HermitianMatrix a = random_psd(rng, 4, rng.integer(1, 4), true);
      const MatrixC b = a.entries() + random_psd(rng, 4, 1, true).entries();
      EXPECT_LE(n.evaluate(a), n.evaluate(b) + 1e-12) << n.name();
    }
  }
}

TEST(Norms, SchattenDual) {
  const auto d = NormDescriptor::schatten(3).dual();
  ASSERT_TRUE(d.has_value());
  EXPECT_NEAR(d->p(), 1.5, 1e-15);
  EXPECT_EQ(NormDescriptor::spectral().dual()->p(), 1.0);
  EXPECT_TRUE(std::isinf(NormDescriptor::trace_norm().dual()->p()));
  EXPECT_FALSE(NormDescriptor::ky_fan(2).dual().has_value());
  EXPECT_NEAR(conjugate_exponent(2.0), 2.0, 0.0);
}

TEST(Norms, DualGaugeClosedValues) {
  EXPECT_NEAR(NormDescriptor::spectral().dual_gauge(VectorR::Ones(5)), 5.0, 1e-14);
  EXPECT_NEAR(dual_norm_eval(NormDescriptor::frobenius(), vec({3, 4})), 5.0, 1e-14);
  EXPECT_NEAR(NormDescriptor::trace_norm().dual_gauge(vec({3, -4})), 4.0, 1e-14);
}

// max <x, v> over the unit ball of the gauge. The Ky Fan k unit ball is a
// polytope whose extreme points are among the signed vectors with support S
// and entries 1 / min(|S|, k); every such vector has gauge exactly 1.
double kyfan_ball_max(int k, const VectorR& v) {
  const int n = static_cast<int>(v.size());
  double best = 0.0;
  for (unsigned support = 1; support < (1u << n); ++support) {
    const int size = __builtin_popcount(support);
    const double h = 1.0 / std::min(size, k);
    double dot = 0.0;
    for (int i = 0; i < n; ++i)
      if (support & (1u << i)) dot += h * std::abs(v(i));
    best = std::max(best, dot);
  }
  return best;
}

TEST(Norms, KyFanDualMatchesBallMaximization) {
  Rng rng(14);
  for (int s = 0; s < 50; ++s) {
    const int n = rng.integer(1, 5);
    const int k = rng.integer(1, n);
    VectorR v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    const NormDescriptor kf = NormDescriptor::ky_fan(k);
    EXPECT_NEAR(kf.dual_gauge(v), kyfan_ball_max(k, v), 1e-8);
    // random points of the ball never beat the dual
    for (int t = 0; t < 20; ++t) {
      VectorR x(n);
      for (int i = 0; i < n; ++i) x(i) = rng.normal();
      x /= kf.gauge(x.cwiseAbs());
      EXPECT_LE(x.dot(v), kf.dual_gauge(v) + 1e-12);
    }
  }
}

TEST(Norms, Parse) {
  EXPECT_TRUE(std::isinf(NormDescriptor::parse("schatten:inf").p()));
  EXPECT_TRUE(std::isinf(NormDescriptor::parse("schatten:sp").p()));
  EXPECT_EQ(NormDescriptor::parse("schatten:2").p(), 2.0);
  EXPECT_EQ(NormDescriptor::parse("kyfan:3").k(), 3);
  EXPECT_EQ(NormDescriptor::parse("kyfan:3").name(), "kyfan:3");
  EXPECT_EQ(NormDescriptor::parse("schatten:1.5").name(), "schatten:1.5");
  EXPECT_THROW(NormDescriptor::parse("schatten:0.5"), IndexError);
  EXPECT_THROW(NormDescriptor::parse("kyfan:0"), IndexError);
  EXPECT_THROW(NormDescriptor::parse("kyfan:x"), IndexError);
  EXPECT_THROW(NormDescriptor::parse("nuclear"), IndexError);
  EXPECT_THROW(NormDescriptor::parse("lp:2"), IndexError);
}

TEST(Norms, SubgradientInequality) {
  Rng rng(15);
  for (const auto& n : {NormDescriptor::trace_norm(), NormDescriptor::schatten(3), NormDescriptor::spectral(),
                        NormDescriptor::ky_fan(2)}) {
    for (int s = 0; s < 10; ++s) {
      const MatrixC m = random_gaussian(rng, 3, 3, true);
      const MatrixC g = n.subgradient(m);
      EXPECT_NEAR((g.adjoint() * m).trace().real(), n.evaluate(m), 1e-9 * n.evaluate(m));
      const MatrixC dm = 0.1 * random_gaussian(rng, 3, 3, true);
      EXPECT_GE(n.evaluate(MatrixC(m + dm)), n.evaluate(m) + (g.adjoint() * dm).trace().real() - 1e-10);
    }
  }
}
