#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "dtop/io.hpp"

using dtop::AnalyticVector;
using dtop::Complex;
using dtop::HarmonicSymbol;

namespace {
std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dtop_io_test_" + name);
}
}  // namespace

TEST_CASE("parse_symbol") {
  auto phi = dtop::parse_symbol(R"({"pos":[[0,2,0],[3,0,-1]],"neg":[[1,0.5,0]]})");
  CHECK(phi.coefficient(0) == Complex(2.0));
  CHECK(phi.coefficient(3) == Complex(0.0, -1.0));
  CHECK(phi.coefficient(-1) == Complex(0.5));
  CHECK(phi.coefficient(2) == Complex(0.0));

  CHECK(dtop::parse_symbol(R"({"pos":[],"neg":[]})").is_zero());

  CHECK_THROWS_AS(dtop::parse_symbol("not json"), dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_symbol(R"({"pos":[]})"), dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_symbol(R"({"pos":[[1,1,0],[1,2,0]],"neg":[]})"),
                  dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_symbol(R"({"pos":[],"neg":[[0,1,0]]})"),
                  dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_symbol(R"({"pos":[[1,1]],"neg":[]})"),
                  dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_symbol(R"({"pos":[[1.5,1,0]],"neg":[]})"),
                  dtop::ParseError);
}

TEST_CASE("symbol round trip") {
  dtop::SymbolFixtures fx(71);
  for (int i = 0; i < 20; ++i) {
    auto phi = fx.random_symbol(9);
    CHECK(dtop::parse_symbol(dtop::serialize_symbol(phi)) == phi);
  }
  CHECK(dtop::parse_symbol(dtop::serialize_symbol(HarmonicSymbol{})).is_zero());
}

TEST_CASE("parse_vector") {
  auto f = dtop::parse_vector(R"({"coeffs":[[1,1,0],[4,-0.25,2]]})");
  CHECK(f.coefficient(1) == Complex(1.0));
  CHECK(f.coefficient(4) == Complex(-0.25, 2.0));

  CHECK_THROWS_AS(dtop::parse_vector(R"({"coeffs":[[0,1,0]]})"), dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_vector(R"({"coeffs":[[2,1,0],[2,1,0]]})"),
                  dtop::ParseError);
  CHECK_THROWS_AS(dtop::parse_vector(R"({})"), dtop::ParseError);

  AnalyticVector g({{1, Complex(1.0 / 3.0, -2.0)}, {7, Complex(0, 1e-17)}});
  CHECK(dtop::parse_vector(dtop::serialize_vector(g)) == g);
}

TEST_CASE("matrix CSV text and bit-exact round trip") {
  auto path = temp_path("matrix.csv");
  dtop::write_matrix_csv(dtop::TruncatedOperator::identity(2), path);
  CHECK(dtop::read_file(path) == "# re,im pairs, N=2\n1,0,0,0\n0,0,1,0\n");

  dtop::SymbolFixtures fx(73);
  Eigen::MatrixXcd m(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      m(i, j) = Complex(fx.uniform(-10, 10), fx.uniform(-10, 10)) / 3.0;
    }
  }
  dtop::TruncatedOperator a(m);
  dtop::write_matrix_csv(a, path);
  auto back = dtop::read_matrix_csv(path);
  CHECK(dtop::max_abs_diff(a, back) == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("matrix CSV rejects malformed input") {
  auto path = temp_path("bad.csv");
  dtop::write_file(path, "no header\n1,0\n");
  CHECK_THROWS_AS(dtop::read_matrix_csv(path), dtop::ParseError);
  dtop::write_file(path, "# re,im pairs, N=2\n1,0,0,0\n");
  CHECK_THROWS_AS(dtop::read_matrix_csv(path), dtop::ParseError);
  dtop::write_file(path, "# re,im pairs, N=1\n1,0,3,0\n");
  CHECK_THROWS_AS(dtop::read_matrix_csv(path), dtop::ParseError);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(dtop::read_file(temp_path("does_not_exist")), dtop::IoError);
}

TEST_CASE("series CSV") {
  auto path = temp_path("series.csv");
  dtop::write_series_csv({}, path);
  CHECK(dtop::read_file(path) == "x,value\n");
  dtop::write_series_csv({{1.0, 0.5}, {2.0, 0.25}}, path);
  CHECK(dtop::read_file(path) == "x,value\n1,0.5\n2,0.25\n");
  std::filesystem::remove(path);
}

TEST_CASE("fixtures are reproducible and dyadic") {
  dtop::SymbolFixtures a(99), b(99);
  for (int i = 0; i < 5; ++i) {
    auto pa = a.random_symbol(6);
    auto pb = b.random_symbol(6);
    CHECK(pa == pb);
    for (const auto& [k, c] : pa.coeffs()) {
      CHECK(c.real() * 16.0 == std::round(c.real() * 16.0));
      CHECK(c.imag() * 16.0 == std::round(c.imag() * 16.0));
      CHECK(std::abs(c.real()) >= 1.0 / 16.0);
    }
  }
  CHECK(is_holomorphic(a.random_holomorphic(5)));
  CHECK(is_antiholomorphic(a.random_antiholomorphic(5)));
  auto p = a.random_point(0.8, 0.2);
  CHECK(std::abs(p.value()) <= 0.8);
  CHECK(std::abs(p.value()) >= 0.2);
}
