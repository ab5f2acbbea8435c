#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "mlstat/errors.hpp"
#include "mlstat/volumes.hpp"

using namespace mlstat;

namespace {

VolumeTable shipped() { return VolumeTable::load(MLSTAT_TEST_DATA "/volumes.txt"); }

}  // namespace

TEST_CASE("shipped table parses and is well formed") {
  const VolumeTable t = shipped();
  CHECK(t.contains(1, 1, 1));
  CHECK(t.contains(0, 4, 4));
  CHECK(t.contains(2, 0, 0));
  for (const auto& [key, poly] : t.entries()) {
    const auto [g, n, m] = key;
    CAPTURE(g);
    CAPTURE(n);
    CHECK(poly.all_coefficients_positive());
    CHECK(poly.even_exponents());
    CHECK(poly.total_degree() <= 2 * (3 * g - 3 + n));
  }
  CHECK(t.moduli_volume(1, 1) == PiNumber::pi2_power(1, Rational(1, 12)));
  CHECK(t.moduli_volume(0, 4) == PiNumber::pi2_power(1, 2));
  CHECK(t.moduli_volume(0, 3) == PiNumber(1));
  CHECK(t.moduli_volume(2, 0) == PiNumber::pi2_power(3, Rational(43, 2160)));
}

TEST_CASE("V11 satisfies the one-step recursion") {
  // d/dL (L V(L)) is proportional to int_0^inf x H(x, L) dx with
  // H(x, L) = 1/(1 + e^{(x+L)/2}) + 1/(1 + e^{(x-L)/2}); the constant of proportionality
  // must not depend on L.
  const VolumeTable t = shipped();
  const PiPoly V = t.lookup(1, 1, 1);
  auto dLV = [&](double L) {
    const double h = 1e-4;
    const double a[] = {L + h}, b[] = {L - h};
    return ((L + h) * V.evaluate(a) - (L - h) * V.evaluate(b)) / (2 * h);
  };
  boost::math::quadrature::exp_sinh<double> es;
  auto kernel = [&](double L) {
    return es.integrate([L](double x) { return x / (1 + std::exp((x + L) / 2)) + x / (1 + std::exp((x - L) / 2)); },
                        0.0, INFINITY);
  };
  const double c0 = dLV(0.5) / kernel(0.5);
  for (double L : {1.0, 2.0, 5.0, 9.0}) {
    CAPTURE(L);
    CHECK(dLV(L) / kernel(L) == doctest::Approx(c0).epsilon(1e-6));
  }
  // closed form of the kernel: L^2/2 + 2 pi^2/3
  CHECK(kernel(3.0) == doctest::Approx(4.5 + 2 * std::numbers::pi * std::numbers::pi / 3).epsilon(1e-9));
  CHECK(c0 == doctest::Approx(0.125).epsilon(1e-6));
}

TEST_CASE("lookup falls back to zero boundaries") {
  const VolumeTable t = shipped();
  const PiPoly cusped = t.lookup(0, 4, 2);
  CHECK(cusped.nvars() == 2);
  const double x[] = {1.0, 2.0};
  CHECK(cusped.evaluate(x) == doctest::Approx(0.5 + 2.0 + 2 * std::numbers::pi * std::numbers::pi));
  CHECK(t.lookup(0, 3, 2).evaluate_at_zero() == PiNumber(1));
  CHECK_THROWS_AS(t.lookup(3, 0, 0), ConfigError);
}

TEST_CASE("parser rejects malformed records") {
  CHECK_THROWS_AS(VolumeTable::parse("(1 1 1) : -1/48*b1^2 + 1/12*pi^2"), ConfigError);
  CHECK_THROWS_AS(VolumeTable::parse("(1 1 1) : 1/48*b1^3"), ConfigError);
  CHECK_THROWS_AS(VolumeTable::parse("(1 1 1) : 1/48*pi^3"), ConfigError);
  CHECK_THROWS_AS(VolumeTable::parse("(1 1 1) 1/48*b1^2"), ConfigError);
  CHECK_THROWS_AS(VolumeTable::parse("(1 1 1) : 1/48*b1^2*b1^2*b1^2"), ConfigError);
  CHECK_THROWS_AS(VolumeTable::load("/nonexistent/volumes.txt"), ConfigError);
  const auto t = VolumeTable::parse("# comment\n(1 1 1) : 1/48*b1^2 + 1/12*pi^2\n");
  CHECK(t.contains(1, 1, 1));
}
