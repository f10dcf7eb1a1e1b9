#include "hindex/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hindex {

namespace {

std::string field(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double finite_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(path + ": value is not finite");
  return v;
}

Complex scalar(const Json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError(path + ": complex entries are [re, im]");
    return {finite_number(j[0], path + "[0]"), finite_number(j[1], path + "[1]")};
  }
  return {finite_number(j, path), 0.0};
}

int declared_size(const Json& doc) {
  if (!doc.is_object()) throw InputError("document: expected an object with \"n\" and \"entries\"");
  if (!doc.contains("n")) throw InputError("n: missing");
  const Json& n = doc["n"];
  if (!n.is_number_integer() || n.get<long long>() < 1) throw InputError("n: expected a positive integer");
  if (!doc.contains("entries")) throw InputError("entries: missing");
  if (!doc["entries"].is_array()) throw InputError("entries: expected an array");
  return static_cast<int>(n.get<long long>());
}

}  // namespace

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw InputError(source + ": malformed JSON (" + std::string(e.what()) + ")");
  }
}

MatrixC matrix_from_json(const Json& doc) {
  const int n = declared_size(doc);
  const Json& rows = doc["entries"];
  if (static_cast<int>(rows.size()) != n)
    throw InputError("entries: expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  MatrixC m(n, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_path = field("entries", i);
    if (!rows[i].is_array()) throw InputError(row_path + ": expected an array");
    if (static_cast<int>(rows[i].size()) != n)
      throw InputError(row_path + ": matrix is not square (row has " + std::to_string(rows[i].size()) +
                       " entries, n = " + std::to_string(n) + ")");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scalar(rows[i][j], field(row_path, j));
  }
  return m;
}

HermitianMatrix hermitian_from_json(const Json& doc) {
  const MatrixC m = matrix_from_json(doc);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const MatrixC skew = m - m.adjoint();
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  if (skew.cwiseAbs().maxCoeff(&i, &j) > 1e-9 * scale)
    throw InputError("entries[" + std::to_string(i) + "][" + std::to_string(j) +
                     "]: matrix is not Hermitian");
  return HermitianMatrix(m);
}

VectorC vector_from_json(const Json& doc) {
  const int n = declared_size(doc);
  const Json& items = doc["entries"];
  if (static_cast<int>(items.size()) != n)
    throw InputError("entries: expected " + std::to_string(n) + " values, got " + std::to_string(items.size()));
  VectorC v(n);
  for (std::size_t i = 0; i < items.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = scalar(items[i], field("entries", i));
  return v;
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round_significant(v);
}

namespace {

Json scalar_to_json(Complex z, bool real) {
  if (real) return number_to_json(z.real());
  return Json::array({number_to_json(z.real()), number_to_json(z.imag())});
}

}  // namespace

Json matrix_to_json(const MatrixC& m) {
  const bool real = (m.imag().array() == 0.0).all();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j), real));
    rows.push_back(row);
  }
  return {{"n", m.rows()}, {"entries", rows}};
}

Json vector_to_json(const VectorC& v) {
  const bool real = (v.imag().array() == 0.0).all();
  Json items = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) items.push_back(scalar_to_json(v(i), real));
  return {{"n", v.size()}, {"entries", items}};
}

Json vector_to_json(const VectorR& v) { return vector_to_json(VectorC(v.cast<Complex>())); }

}  // namespace hindex
