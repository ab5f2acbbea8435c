#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mlstat/errors.hpp"
#include "mlstat/pi_poly.hpp"

using namespace mlstat;

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("x"), ConfigError);
}

TEST_CASE("Bernoulli numbers and zeta at even integers") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(7) == Rational(0));
  CHECK(zeta_even(1) == PiNumber::pi2_power(1, Rational(1, 6)));
  CHECK(zeta_even(2) == PiNumber::pi2_power(2, Rational(1, 90)));
  CHECK(zeta_even(3) == PiNumber::pi2_power(3, Rational(1, 945)));
  // direct series as an oracle
  for (int m = 1; m <= 6; ++m) {
    double s = 0;
    for (int n = 200000; n >= 1; --n) s += std::pow(n, -2.0 * m);
    CHECK(zeta_even(m).to_double() == doctest::Approx(s).epsilon(m == 1 ? 1e-5 : 1e-12));
  }
}

TEST_CASE("PiNumber arithmetic") {
  const PiNumber a = PiNumber::pi2_power(1, Rational(1, 12)) + PiNumber(Rational(1, 48));
  CHECK(a.str() == "1/12*pi^2 + 1/48");
  CHECK(a.to_double() == doctest::Approx(std::numbers::pi * std::numbers::pi / 12 + 1.0 / 48));
  const PiNumber sq = a * a;
  CHECK(sq.coefficient(2) == Rational(1, 144));
  CHECK(sq.coefficient(1) == Rational(1, 288));
  CHECK((sq - a * a).is_zero());
  CHECK(a / PiNumber::pi2_power(1) == PiNumber(Rational(1, 12)) + PiNumber::pi2_power(-1, Rational(1, 48)));
  CHECK_THROWS_AS(PiNumber(1) / a, DomainError);
  CHECK(a.all_positive());
  CHECK_FALSE((-a).all_nonnegative());
}

TEST_CASE("PiFraction identities") {
  const PiFraction b(PiNumber::pi2_power(1, Rational(1, 24)));
  const PiFraction a(PiNumber::pi2_power(2, Rational(1, 45)) + PiNumber(3));
  CHECK(a / (b * b) * b * b == a);
  const PiFraction x(PiNumber(1) + PiNumber::pi2_power(1), PiNumber(2) + PiNumber::pi2_power(1));
  CHECK(x * PiFraction(PiNumber(2) + PiNumber::pi2_power(1)) == PiFraction(PiNumber(1) + PiNumber::pi2_power(1)));
  CHECK(x - x == PiFraction());
  CHECK_THROWS(PiFraction(PiNumber(1), PiNumber()));
}

TEST_CASE("PiPoly") {
  PiPoly p = PiPoly::variable(2, 0, 2) + PiPoly::constant(2, PiNumber::pi2_power(1, 4));
  PiPoly q = PiPoly::variable(2, 1, 2);
  PiPoly pq = p * q;
  CHECK(pq.total_degree() == 4);
  CHECK(pq.even_exponents());
  CHECK(pq.all_coefficients_positive());
  const double x[] = {1.5, 2.0};
  CHECK(pq.evaluate(x) == doctest::Approx((2.25 + 4 * std::numbers::pi * std::numbers::pi) * 4.0));
  CHECK(p.evaluate_at_zero() == PiNumber::pi2_power(1, 4));
  // substitute x1 -> y1, x2 -> 0
  PiPoly s = pq.substitute({0, -1}, 1);
  CHECK(s.is_zero());
  PiPoly s2 = p.substitute({1, -1}, 3);
  CHECK(s2.nvars() == 3);
  const double y[] = {0.0, 3.0, 7.0};
  CHECK(s2.evaluate(y) == doctest::Approx(9.0 + 4 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("LPolynomial") {
  LPolynomial P;
  P.add(2, PiNumber(Rational(1, 4)));
  P.add(0, PiNumber::pi2_power(1));
  CHECK(P.degree() == 2);
  CHECK(P.leading() == PiNumber(Rational(1, 4)));
  CHECK(P.evaluate(2.0) == doctest::Approx(1.0 + std::numbers::pi * std::numbers::pi));
  CHECK(P.all_nonnegative());
  CHECK(P.scaled(PiNumber(2)).coefficient(2) == PiNumber(Rational(1, 2)));
}
