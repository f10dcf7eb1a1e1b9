#include "hindex/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace hindex {

namespace {

double lp_norm(const VectorR& v, double p) {
  if (v.size() == 0) return 0.0;
  const double top = v.cwiseAbs().maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  if (p == 1.0) return v.cwiseAbs().sum();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)) / top, p);
  return top * std::pow(s, 1.0 / p);
}

VectorR sorted_magnitudes(const VectorR& v) {
  VectorR a = v.cwiseAbs();
  std::sort(a.data(), a.data() + a.size(), std::greater<>());
  return a;
}

}  // namespace

double conjugate_exponent(double p) {
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

NormDescriptor::NormDescriptor(Kind kind, double p, int k) : kind_(kind), p_(p), k_(k) {
  VectorR e1 = VectorR::Zero(std::max(k, 1));
  e1(0) = 1.0;
  normalization_ = 1.0 / raw_gauge(e1);
}

NormDescriptor NormDescriptor::schatten(double p) {
  if (!(p >= 1.0)) throw IndexError("schatten norm requires p in [1, inf]");
  return NormDescriptor(Kind::Schatten, p, 1);
}

NormDescriptor NormDescriptor::ky_fan(int k) {
  if (k < 1) throw IndexError("ky fan norm requires k >= 1");
  return NormDescriptor(Kind::KyFan, 0.0, k);
}

NormDescriptor NormDescriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw IndexError("norm must look like schatten:p or kyfan:k, got '" + std::string(text) + "'");
  const std::string_view family = text.substr(0, colon);
  const std::string arg(text.substr(colon + 1));
  if (family == "schatten") {
    if (arg == "inf" || arg == "sp" || arg == "infinity") return spectral();
    double p = 0.0;
    std::istringstream in(arg);
    if (!(in >> p) || !in.eof()) throw IndexError("bad schatten exponent '" + arg + "'");
    return schatten(p);
  }
  if (family == "kyfan") {
    int k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc() || ptr != arg.data() + arg.size())
      throw IndexError("bad ky fan order '" + arg + "'");
    return ky_fan(k);
  }
  throw IndexError("unknown norm family '" + std::string(family) + "'");
}

std::string NormDescriptor::name() const {
  if (kind_ == Kind::KyFan) return "kyfan:" + std::to_string(k_);
  if (std::isinf(p_)) return "schatten:inf";
  std::ostringstream out;
  out << "schatten:" << p_;
  return out.str();
}

double NormDescriptor::raw_gauge(const VectorR& v) const {
  if (kind_ == Kind::Schatten) return lp_norm(v, p_);
  if (v.size() < k_)
    throw IndexError("ky fan order " + std::to_string(k_) + " exceeds dimension " +
                     std::to_string(v.size()));
  return sorted_magnitudes(v).head(k_).sum();
}

double NormDescriptor::gauge(const VectorR& v) const { return normalization_ * raw_gauge(v); }

double NormDescriptor::dual_gauge(const VectorR& v) const {
  double raw = 0.0;
  if (kind_ == Kind::Schatten) {
    raw = lp_norm(v, conjugate_exponent(p_));
  } else {
    if (v.size() < k_)
      throw IndexError("ky fan order " + std::to_string(k_) + " exceeds dimension " +
                       std::to_string(v.size()));
    raw = std::max(v.cwiseAbs().maxCoeff(), v.cwiseAbs().sum() / k_);
  }
  return raw / normalization_;
}

std::optional<NormDescriptor> NormDescriptor::dual() const {
  if (kind_ == Kind::Schatten) return schatten(conjugate_exponent(p_));
  return std::nullopt;
}

double NormDescriptor::evaluate(const MatrixC& m) const { return gauge(singular_values(m)); }

MatrixC NormDescriptor::subgradient(const MatrixC& m) const {
  Eigen::JacobiSVD<MatrixC> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VectorR& s = svd.singularValues();
  VectorR weight = VectorR::Zero(s.size());
  if (s.size() == 0) return MatrixC::Zero(m.rows(), m.cols());
  if (kind_ == Kind::KyFan) {
    weight.head(std::min<Eigen::Index>(k_, s.size())).setOnes();
  } else if (std::isinf(p_)) {
    weight(0) = 1.0;
  } else if (p_ == 1.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) weight(i) = s(i) > 0.0 ? 1.0 : 0.0;
  } else {
    const double total = lp_norm(s, p_);
    if (total > 0.0)
      for (Eigen::Index i = 0; i < s.size(); ++i) weight(i) = std::pow(s(i) / total, p_ - 1.0);
  }
  const Eigen::Index r = s.size();
  return normalization_ * svd.matrixU().leftCols(r) * weight.asDiagonal() *
         svd.matrixV().leftCols(r).adjoint();
}

double norm_eval(const NormDescriptor& norm, const MatrixC& m) { return norm.evaluate(m); }

double dual_norm_eval(const NormDescriptor& norm, const VectorR& v) { return norm.dual_gauge(v); }

}  // namespace hindex
