#include <doctest.h>

#include <filesystem>
#include <limits>

#include "pivotlab/error.hpp"
#include "pivotlab/matrix_io.hpp"
#include "pivotlab/random.hpp"

using namespace pivotlab;

namespace {

Errc parse_code(const std::string& text) {
  try {
    matrix_from_csv(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("real matrices round trip bit for bit") {
  RealMatrix a(2, 4);
  a << 0.1, 1.0 / 3.0, -0.0, 1e-300, std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(),
      -2.5, 123456789.125;
  const auto back = matrix_from_csv(matrix_to_csv(AnyMatrix{a}));
  const RealMatrix& b = std::get<RealMatrix>(back.matrix);
  CHECK(b == a);
  CHECK(std::signbit(b(0, 2)));
  CHECK(back.metadata.empty());
}

TEST_CASE("complex matrices interleave real and imaginary parts") {
  RandomStream rng(101);
  ComplexMatrix z(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) z(i, j) = rng.complex_normal();
  const std::string csv = matrix_to_csv(AnyMatrix{z});
  CHECK(csv.rfind("# 3,3,complex\n", 0) == 0);
  const auto back = matrix_from_csv(csv);
  CHECK(std::get<ComplexMatrix>(back.matrix) == z);

  const auto small = matrix_from_csv("# 1,2,complex\n1,2,3,4\n");
  const ComplexMatrix& s = std::get<ComplexMatrix>(small.matrix);
  CHECK(s(0, 0) == std::complex<double>(1, 2));
  CHECK(s(0, 1) == std::complex<double>(3, 4));
}

TEST_CASE("header and metadata layout") {
  RealMatrix a(2, 2);
  a << 1, 2, 3, 4;
  const std::string csv = matrix_to_csv(AnyMatrix{a}, {{"ensemble", "ginibre"}, {"seed", "7"}});
  CHECK(csv == "# 2,2,real\n# ensemble=ginibre\n# seed=7\n1,2\n3,4\n");
  const auto back = matrix_from_csv(csv);
  CHECK(back.metadata.at("seed") == "7");
  CHECK(back.metadata.at("ensemble") == "ginibre");
  CHECK(std::get<RealMatrix>(matrix_from_csv("# 1,1,real\r\n\n 5 \r\n").matrix)(0, 0) == 5.0);
}

TEST_CASE("malformed input is a parse error") {
  CHECK(parse_code("1,2\n3,4\n") == Errc::ParseError);
  CHECK(parse_code("") == Errc::ParseError);
  CHECK(parse_code("# 2,2\n1,2\n3,4\n") == Errc::ParseError);
  CHECK(parse_code("# 2,2,quaternion\n1,2\n3,4\n") == Errc::ParseError);
  CHECK(parse_code("# 2,2,real\n1,2\n3\n") == Errc::ParseError);
  CHECK(parse_code("# 2,2,real\n1,2\n") == Errc::ParseError);
  CHECK(parse_code("# 2,2,real\n1,x\n3,4\n") == Errc::ParseError);
  CHECK(parse_code("# 0,2,real\n") == Errc::ParseError);
  CHECK(parse_code("# 1,1,complex\n1\n") == Errc::ParseError);
}

TEST_CASE("file round trip and missing files") {
  const auto path = (std::filesystem::temp_directory_path() / "pivotlab_test_matrix.csv").string();
  RealMatrix a = RealMatrix::Identity(3, 3);
  a(2, 0) = -7.25;
  write_matrix_csv(path, AnyMatrix{a}, {{"note", "x"}});
  const auto back = read_matrix_csv(path);
  CHECK(std::get<RealMatrix>(back.matrix) == a);
  CHECK(back.metadata.at("note") == "x");
  std::filesystem::remove(path);
  try {
    read_matrix_csv(path);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IoError);
  }
  CHECK_THROWS_AS(write_matrix_csv("/nonexistent-dir/x.csv", AnyMatrix{a}), Error);
}
