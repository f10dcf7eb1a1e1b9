#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hindex/json_io.hpp"
#include "hindex/minimal_index.hpp"
#include "hindex/norm_index.hpp"
#include "hindex/spectral_index.hpp"
#include "support.hpp"

using namespace hindex;
using namespace hindex::testing;

namespace {

std::string fixture_dir() {
  const char* env = std::getenv("HINDEX_FIXTURES");
  return env ? env : "fixtures";
}

Json load(const std::string& name) {
  std::ifstream in(fixture_dir() + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), name);
}

// inf over D = diag(a + s, c + |b|^2 / s), s > 0, of (sum D_ii^-2)^-1/2:
// the boundary of D >= A for a 2x2 A.
double relaxation_scan_2x2(const MatrixC& a) {
  const double b2 = std::norm(a(0, 1));
  double best = std::min(a(0, 0).real(), a(1, 1).real());
  for (int k = 0; k <= 400000; ++k) {
    const double s = std::exp(-20.0 + 40.0 * k / 400000.0);
    const double d1 = a(0, 0).real() + s;
    const double d2 = a(1, 1).real() + b2 / s;
    best = std::min(best, 1.0 / std::sqrt(1.0 / (d1 * d1) + 1.0 / (d2 * d2)));
  }
  return best;
}

// min over x = (cos t, sin t) of |A o xx*|_2.
double frobenius_grid_2x2(const MatrixC& a) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 400000; ++k) {
    const double t = 0.5 * M_PI * k / 400000.0;
    const double w1 = std::pow(std::cos(t), 2);
    const double w2 = std::pow(std::sin(t), 2);
    const double f = std::norm(a(0, 0)) * w1 * w1 + 2.0 * std::norm(a(0, 1)) * w1 * w2 + std::norm(a(1, 1)) * w2 * w2;
    best = std::min(best, std::sqrt(f));
  }
  return best;
}

}  // namespace

TEST(Fixtures, Inf2WitnessHasGap) {
  const Json doc = load("inf2_witness.json");
  const HermitianMatrix a = hermitian_from_json(doc);
  ASSERT_EQ(a.n(), 2);
  ASSERT_TRUE(a.is_psd());
  const double relaxed = relaxation_scan_2x2(a.entries());
  const double frob = frobenius_grid_2x2(a.entries());
  EXPECT_GT(relaxed - frob, 1e-3);
  EXPECT_NEAR(relaxed, doc["relaxed"].get<double>(), 1e-6);
  EXPECT_NEAR(frob, doc["frobenius"].get<double>(), 1e-6);
  EXPECT_NEAR(frobenius_index(a).value, frob, 1e-8);
  EXPECT_NEAR(inf2_relaxation(a), relaxed, 1e-6);
}

TEST(Fixtures, GoldenValues) {
  for (const char* name : {"remark29.json", "lambda_2_half.json", "ones2.json"}) {
    const Json doc = load(name);
    const HermitianMatrix a = hermitian_from_json(doc);
    const Json& expected = doc["expected"];
    if (expected.contains("minimal"))
      EXPECT_NEAR(minimal_index(a).value, expected["minimal"].get<double>(), 1e-10) << name;
    if (expected.contains("spectral")) {
      EXPECT_NEAR(spectral_index_search(a).value, expected["spectral"].get<double>(), 1e-6) << name;
      if (a.n() == 2) EXPECT_NEAR(grid_spectral_2x2(a.entries()), expected["spectral"].get<double>(), 1e-6) << name;
    }
    if (expected.contains("frobenius"))
      EXPECT_NEAR(frobenius_index(a).value, expected["frobenius"].get<double>(), 1e-10) << name;
  }
}
