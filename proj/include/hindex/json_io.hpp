#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hindex/matrix.hpp"

namespace hindex {

/// Malformed input document. The message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// Parses JSON text; `source` prefixes the error message.
Json parse_json_text(std::string_view text, const std::string& source);

/// {"n": int, "entries": [[x, ...], ...]} with x a number or [re, im].
/// Rejects non-square shapes, a mismatched n, non-finite values.
MatrixC matrix_from_json(const Json& doc);

/// matrix_from_json plus a Hermitian check: |M - M*| <= 1e-9 max(1, |M|).
HermitianMatrix hermitian_from_json(const Json& doc);

/// {"n": int, "entries": [x, ...]}.
VectorC vector_from_json(const Json& doc);

/// Real entries print as numbers, complex ones as [re, im]; every value is
/// rounded to 12 significant digits.
Json matrix_to_json(const MatrixC& m);
Json vector_to_json(const VectorC& v);
Json vector_to_json(const VectorR& v);

/// v rounded to `digits` significant digits; non-finite values pass through.
double round_significant(double v, int digits = 12);

/// round_significant for finite values; "inf", "-inf" or "nan" strings otherwise.
Json number_to_json(double v);

}  // namespace hindex
