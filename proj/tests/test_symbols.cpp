#include <doctest.h>

#include <cmath>
#include <complex>

#include "dtop/io.hpp"
#include "dtop/symbols.hpp"

using dtop::Complex;
using dtop::HarmonicSymbol;
using dtop::Point;

namespace {
const HarmonicSymbol z = HarmonicSymbol::monomial(1);
const HarmonicSymbol zbar = HarmonicSymbol::monomial(-1);
}  // namespace

TEST_CASE("eval") {
  HarmonicSymbol phi = z + Complex(2.0) * zbar;
  CHECK(phi.eval(Point(0.5, 0)) == Complex(1.5));
  CHECK(HarmonicSymbol::constant(1.0).eval(Point(0.3, -0.7)) == Complex(1.0));

  HarmonicSymbol zbar2 = HarmonicSymbol::monomial(-2);
  Point p(0, 0.3);
  CHECK(std::abs(zbar2.eval(p) - Complex(-0.09)) < 1e-15);
  CHECK(std::abs(zbar2.eval(p) - std::conj(p.value()) * std::conj(p.value())) < 1e-15);
}

TEST_CASE("holomorphy predicates") {
  HarmonicSymbol z3 = HarmonicSymbol::monomial(3);
  CHECK(is_holomorphic(z3));
  CHECK_FALSE(is_antiholomorphic(z3));

  HarmonicSymbol five = HarmonicSymbol::constant(5.0);
  CHECK(is_holomorphic(five));
  CHECK(is_antiholomorphic(five));

  HarmonicSymbol mixed = z + zbar;
  CHECK_FALSE(is_holomorphic(mixed));
  CHECK_FALSE(is_antiholomorphic(mixed));
}

TEST_CASE("decompose") {
  auto [p1, p2] = dtop::decompose(z + Complex(2.0) * zbar);
  CHECK(p1 == z);
  CHECK(p2 == Complex(2.0) * zbar);

  auto [q1, q2] = dtop::decompose(HarmonicSymbol{});
  CHECK(q1.is_zero());
  CHECK(q2.is_zero());

  // Constant goes with the holomorphic part.
  auto [r1, r2] = dtop::decompose(HarmonicSymbol::constant(3.0) + HarmonicSymbol::monomial(-2));
  CHECK(r1 == HarmonicSymbol::constant(3.0));
  CHECK(r2 == HarmonicSymbol::monomial(-2));

  // Idempotent splitting, and the parts add back exactly.
  dtop::SymbolFixtures fx(7);
  for (int i = 0; i < 10; ++i) {
    auto phi = fx.random_symbol(8);
    auto [a, b] = dtop::decompose(phi);
    CHECK(a + b == phi);
    CHECK(dtop::decompose(a).first == a);
    CHECK(dtop::decompose(a).second.is_zero());
  }
}

TEST_CASE("cesaro") {
  CHECK(dtop::cesaro(z, 0).is_zero());
  CHECK(dtop::cesaro(z, 1) == Complex(0.5) * z);

  HarmonicSymbol phi = HarmonicSymbol::constant(2.0) + HarmonicSymbol::monomial(-3);
  CHECK(dtop::cesaro(phi, 2) == HarmonicSymbol::constant(2.0));

  // Factors converge monotonically to 1; exact support equality past max degree.
  HarmonicSymbol g = Complex(1.0) * z + HarmonicSymbol::monomial(-4, Complex(0, 2));
  double prev = 0.0;
  for (int order : {4, 8, 16, 32}) {
    double f = std::abs(dtop::cesaro(g, order).coefficient(-4));
    CHECK(f > prev);
    prev = f;
  }
  CHECK_THROWS_AS(dtop::cesaro(z, -1), std::invalid_argument);
}

TEST_CASE("boundary_product") {
  CHECK(dtop::boundary_product(zbar, z) == HarmonicSymbol::constant(1.0));
  CHECK(dtop::boundary_product(z, z) == HarmonicSymbol::monomial(2));

  dtop::SymbolFixtures fx(11);
  auto a = fx.random_symbol(5);
  auto b = fx.random_symbol(5);
  auto c = fx.random_symbol(5);
  CHECK(dtop::boundary_product(HarmonicSymbol::constant(1.0), a) == a);
  CHECK(dtop::boundary_product(a, b) == dtop::boundary_product(b, a));
  CHECK(dtop::boundary_product(dtop::boundary_product(a, b), c) ==
        dtop::boundary_product(a, dtop::boundary_product(b, c)));
  // Bilinearity.
  CHECK(dtop::boundary_product(a, b + c) ==
        dtop::boundary_product(a, b) + dtop::boundary_product(a, c));
}

TEST_CASE("boundary_product matches the pointwise product in the radial limit") {
  HarmonicSymbol psi = zbar + HarmonicSymbol::monomial(2);
  HarmonicSymbol phi = z + HarmonicSymbol::monomial(-2, Complex(0.5));
  auto prod = dtop::boundary_product(psi, phi);
  double theta = 0.7;
  double prev = 1e9;
  for (double r : {0.5, 0.9, 0.99, 0.999}) {
    Point p(std::polar(r, theta));
    double diff = std::abs(prod.eval(p) - psi.eval(p) * phi.eval(p));
    CHECK(diff < prev);
    prev = diff;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("sup_norm") {
  CHECK(dtop::sup_norm(z, 64) == 1.0);
  CHECK(dtop::sup_norm(z + zbar, 64) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dtop::sup_norm(HarmonicSymbol{}, 16) == 0.0);
}
