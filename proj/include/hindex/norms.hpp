#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "hindex/matrix.hpp"

namespace hindex {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A unitarily invariant norm on M_n given by its symmetric gauge function
/// on the singular values: Schatten p-norms (p in [1, inf]) or Ky Fan
/// k-norms. Every descriptor is normalized so that N(E_11) = 1.
class NormDescriptor {
 public:
  enum class Kind { Schatten, KyFan };

  static NormDescriptor schatten(double p);
  static NormDescriptor ky_fan(int k);
  static NormDescriptor spectral() { return schatten(kInfinity); }
  static NormDescriptor frobenius() { return schatten(2.0); }
  static NormDescriptor trace_norm() { return schatten(1.0); }

  /// "schatten:p" (p a number, "inf" or "sp") or "kyfan:k".
  static NormDescriptor parse(std::string_view text);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  int k() const { return k_; }
  std::string name() const;

  /// Gauge function applied to a vector of magnitudes (order irrelevant).
  double gauge(const VectorR& v) const;
  /// Dual gauge: l_q for Schatten p, max(|v|_inf, |v|_1 / k) for Ky Fan k.
  double dual_gauge(const VectorR& v) const;
  /// Dual descriptor; Ky Fan duals are not Ky Fan norms, so they have none.
  std::optional<NormDescriptor> dual() const;

  double evaluate(const MatrixC& m) const;
  double evaluate(const HermitianMatrix& m) const { return evaluate(m.entries()); }

  /// An element G of the subdifferential at m, so that
  /// N(m + dm) >= N(m) + Re tr(G* dm).
  MatrixC subgradient(const MatrixC& m) const;

 private:
  NormDescriptor(Kind kind, double p, int k);
  double raw_gauge(const VectorR& v) const;

  Kind kind_;
  double p_ = 2.0;
  int k_ = 1;
  double normalization_ = 1.0;
};

double norm_eval(const NormDescriptor& norm, const MatrixC& m);
double dual_norm_eval(const NormDescriptor& norm, const VectorR& v);

/// Conjugate exponent q with 1/p + 1/q = 1.
double conjugate_exponent(double p);

}  // namespace hindex
