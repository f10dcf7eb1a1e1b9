#include "hindex/operator_inequality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "hindex/nnls.hpp"

namespace hindex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(const VectorR& x, const char* what) {
  if (x.size() == 0) throw IndexError(std::string(what) + ": empty vector");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x(i) > 0.0) || !std::isfinite(x(i)))
      throw IndexError(std::string(what) + ": entries must be positive and finite");
}

// Sorted distinct values; neighbours within merge_tol (relative) collapse.
std::vector<double> distinct(std::vector<double> v, double merge_tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > merge_tol * std::max(std::abs(x), std::abs(out.back())))
      out.push_back(x);
  return out;
}

double diagonal_term(double l) { return l * l + 1.0 / (l * l); }

double pair_term(double l, double m) { return (l + m) * (l + m) / (1.0 + l * l * m * m); }

bool admissible(double l, double m) {
  const double c = 1.0 / (l * m);
  return l * l <= c && c <= m * m;
}

LambdaIndex constant_from_distinct(const std::vector<double>& v) {
  LambdaIndex out;
  out.m1 = kInf;
  out.m2 = kInf;
  std::vector<double> arg1;
  std::vector<double> arg2;
  for (double l : v) {
    const double t = diagonal_term(l);
    if (t < out.m1) {
      out.m1 = t;
      arg1 = {l};
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (admissible(v[i], v[j])) {
        const double t = pair_term(v[i], v[j]);
        if (t < out.m2) {
          out.m2 = t;
          arg2 = {v[i], v[j]};
        }
      }
  if (out.m2 < out.m1) {
    out.value = out.m2;
    out.argmin = arg2;
  } else {
    out.value = out.m1;
    out.argmin = arg1;
  }
  return out;
}

std::vector<double> to_vector(const VectorR& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace

SpectrumList SpectrumList::parse(std::string_view text) {
  SpectrumList out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw IndexError("spectrum: cannot parse '" + std::string(item) + "'");
    if (!std::isfinite(value)) throw IndexError("spectrum: values must be finite");
    if (value == 0.0) throw IndexError("spectrum: zero eigenvalue, S is not invertible");
    out.values.push_back(value);
    pos = comma + 1;
  }
  return out;
}

HermitianMatrix lambda_matrix(const VectorR& x) {
  require_positive(x, "lambda_matrix");
  const MatrixR outer = x * x.transpose();
  return HermitianMatrix(MatrixR(outer + outer.cwiseInverse()));
}

double lambda_minimal_index(const VectorR& x, double merge_tol) {
  require_positive(x, "lambda_minimal_index");
  const std::vector<double> v = distinct(to_vector(x), merge_tol);
  if (v.size() == 1) return diagonal_term(v[0]);
  if (v.size() == 2) return pair_term(v[0], v[1]);
  return 0.0;
}

LambdaIndex lambda_spectral_index(const VectorR& x, double merge_tol) {
  require_positive(x, "lambda_spectral_index");
  return constant_from_distinct(distinct(to_vector(x), merge_tol));
}

LambdaIndex best_constant(const SpectrumList& spectrum, double merge_tol) {
  if (spectrum.values.empty()) throw IndexError("best_constant: empty spectrum");
  std::vector<double> mags;
  for (double l : spectrum.values) {
    if (l == 0.0 || !std::isfinite(l)) throw IndexError("best_constant: S must be invertible");
    mags.push_back(std::abs(l));
  }
  const auto [lo, hi] = std::minmax_element(mags.begin(), mags.end());
  if (*hi <= 1.0 || *lo >= 1.0) {
    // all on one side of 1: M(S) is decided by the value nearest to 1
    const double l = *hi <= 1.0 ? *hi : *lo;
    LambdaIndex out;
    out.value = out.m1 = diagonal_term(l);
    out.m2 = kInf;
    out.argmin = {l};
    return out;
  }
  return constant_from_distinct(distinct(mags, merge_tol));
}

InequalityCheck verify_inequality(const VectorR& s, const HermitianMatrix& t) {
  require_positive(s, "verify_inequality");
  if (s.size() != t.n()) throw IndexError("verify_inequality: dimension mismatch");
  t.require_psd("verify_inequality");
  const MatrixC sd = s.cast<Complex>().asDiagonal();
  const MatrixC si = s.cwiseInverse().cast<Complex>().asDiagonal();
  const MatrixC lhs_matrix = sd * t.entries() * sd + si * t.entries() * si;
  const MatrixC via_hadamard = lambda_matrix(s).entries().cwiseProduct(t.entries());
  InequalityCheck out;
  out.lhs = singular_values(lhs_matrix)(0);
  out.rhs = best_constant({to_vector(s)}).value * singular_values(t.entries())(0);
  out.hadamard_error = (lhs_matrix - via_hadamard).cwiseAbs().maxCoeff();
  return out;
}

HermitianMatrix tight_witness(const VectorR& s, double merge_tol) {
  require_positive(s, "tight_witness");
  const LambdaIndex m = best_constant({to_vector(s)}, merge_tol);
  const auto n = static_cast<int>(s.size());
  auto index_of = [&](double value) {
    Eigen::Index best = 0;
    (s.array() - value).abs().minCoeff(&best);
    return best;
  };
  VectorR x = VectorR::Zero(n);
  if (m.argmin.size() == 1) {
    x(index_of(m.argmin[0])) = 1.0;
  } else {
    // x = sqrt(I u) on the pair, u >= 0 solving Lambda_J u = (1, 1)
    const Eigen::Index i = index_of(m.argmin[0]);
    const Eigen::Index j = index_of(m.argmin[1]);
    VectorR pair(2);
    pair << s(i), s(j);
    const MatrixR lam = lambda_matrix(pair).real_part();
    const NnlsOutcome sol = nnls(lam, VectorR::Ones(2), 1e-8);
    const double index = 1.0 / sol.u.sum();
    x(i) = std::sqrt(sol.u(0) * index);
    x(j) = std::sqrt(sol.u(1) * index);
    x /= x.norm();
  }
  return HermitianMatrix(MatrixR(x * x.transpose()));
}

}  // namespace hindex
