#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hindex/json_io.hpp"
#include "support.hpp"

using namespace hindex;
using namespace hindex::testing;

namespace {

std::string error_of(const std::string& text) {
  try {
    hermitian_from_json(parse_json_text(text, "doc"));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(JsonIo, ParsesRealAndComplexEntries) {
  const MatrixC m = matrix_from_json(parse_json_text(R"({"n":2,"entries":[[2,[1,1]],[[1,-1],3]]})", "doc"));
  EXPECT_EQ(m(0, 1), Complex(1, 1));
  EXPECT_EQ(m(1, 0), Complex(1, -1));
  EXPECT_EQ(m(1, 1), Complex(3, 0));
  const VectorC v = vector_from_json(parse_json_text(R"({"n":3,"entries":[1,[0,2],3.5]})", "doc"));
  EXPECT_EQ(v(1), Complex(0, 2));
}

TEST(JsonIo, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"n":2,"entries":[[1,2],[3]]})").find("entries[1]"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":2,"entries":[[1,2]]})").find("entries"), std::string::npos);
  EXPECT_NE(error_of(R"({"entries":[[1]]})").find("n:"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":0,"entries":[]})").find("n:"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1})").find("entries"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1,"entries":[["x"]]})").find("entries[0][0]"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":1,"entries":[[[1,2,3]]]})").find("entries[0][0]"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":2,"entries":[[1,2],[0,1]]})").find("not Hermitian"), std::string::npos);
  EXPECT_NE(error_of(R"({"n":2,"entries":[[1,2],)").find("malformed"), std::string::npos);
  EXPECT_NE(error_of("[1,2]").find("document"), std::string::npos);
}

TEST(JsonIo, RejectsNonFinite) {
  Json doc = {{"n", 1}, {"entries", Json::array({Json::array({std::numeric_limits<double>::quiet_NaN()})})}};
  EXPECT_THROW(matrix_from_json(doc), InputError);
  doc["entries"][0][0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(matrix_from_json(doc), InputError);
  // 1e400 overflows to inf while parsing
  EXPECT_THROW(matrix_from_json(parse_json_text(R"({"n":1,"entries":[[1e400]]})", "doc")), InputError);
}

TEST(JsonIo, RoundTrip) {
  Rng rng(101);
  const MatrixC m = random_gaussian(rng, 3, 3, true);
  const Json j = matrix_to_json(m);
  const MatrixC back = matrix_from_json(parse_json_text(j.dump(), "doc"));
  EXPECT_LE((back - m).cwiseAbs().maxCoeff(), 1e-11 * m.cwiseAbs().maxCoeff());
  EXPECT_EQ(matrix_to_json(back).dump(), j.dump());

  const Json real = matrix_to_json(MatrixC(mat2(1, 2, 2, 1).cast<Complex>()));
  EXPECT_TRUE(real["entries"][0][1].is_number());
  const Json v = vector_to_json(vec({1.0 / 3.0, 2}));
  EXPECT_EQ(v["n"], 2);
  EXPECT_EQ(v["entries"][0].get<double>(), 0.333333333333);
}

TEST(JsonIo, Rounding) {
  EXPECT_EQ(round_significant(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(round_significant(123456789.123456789, 5), 123460000.0);
  EXPECT_EQ(round_significant(0.0), 0.0);
  EXPECT_EQ(number_to_json(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(number_to_json(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(number_to_json(std::nan("")), "nan");
  EXPECT_EQ(number_to_json(0.2).get<double>(), 0.2);
}
