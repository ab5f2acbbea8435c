#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "mlstat/errors.hpp"
#include "mlstat/frequencies.hpp"

using namespace mlstat;
namespace q = boost::math::quadrature;

namespace {

VolumeTable shipped() { return VolumeTable::load(MLSTAT_TEST_DATA "/volumes.txt"); }

KappaTable star(Rational k) { return {{{"*", k}}, "test"}; }

}  // namespace

TEST_CASE("simplex monomial integrals against nested quadrature") {
  const int e[] = {2, 1};
  const Rational a[] = {Rational(2), Rational(3)};
  const SimplexTerm t = simplex_monomial_integral(e, a);
  CHECK(t.degree == 5);
  // int_{2x + 3y <= 1} x^2 y dx dy
  const double v = q::gauss_kronrod<double, 31>::integrate(
      [](double x) {
        const double ymax = (1 - 2 * x) / 3;
        return x * x * ymax * ymax / 2;
      },
      0.0, 0.5);
  CHECK(to_double(t.coeff) == doctest::Approx(v).epsilon(1e-12));
  const int e1[] = {1};
  const Rational a1[] = {Rational(1)};
  CHECK(simplex_monomial_integral(e1, a1).coeff == Rational(1, 2));
  CHECK_THROWS_AS(simplex_monomial_integral(e, a1), DomainError);
}

TEST_CASE("builtin cuts validate and are consistent") {
  for (const auto& name : builtin_cut_names()) {
    CAPTURE(name);
    const CutData c = builtin_cut(name);
    CHECK_NOTHROW(c.validate());
  }
  CutData bad = builtin_cut("S11/nonsep");
  bad.pieces[0].boundary = {1, kCusp, kCusp};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(builtin_cut("S33/sep"), ConfigError);
}

TEST_CASE("count polynomials on S11 and beyond") {
  const VolumeTable t = shipped();
  const CutData s11 = builtin_cut("S11/nonsep");
  for (int qq = 1; qq <= 4; ++qq) {
    const Rational a[] = {Rational(qq)};
    const LPolynomial P = count_polynomial(s11, a, Rational(1, 2), t);
    CHECK(P.degree() == 2);
    CHECK(P.coefficient(2) == PiNumber(Rational(1, 4 * qq * qq)));
    CHECK(P.coefficient(0).is_zero());
  }
  // S12 non-separating: V_{0,4}(x, x, 0, 0) = x^2 + 2 pi^2
  const CutData s12 = builtin_cut("S12/nonsep");
  const Rational one[] = {Rational(1)};
  const LPolynomial P = count_polynomial(s12, one, Rational(1), t);
  CHECK(P.degree() == 4);
  CHECK(P.coefficient(4) == PiNumber(Rational(1, 4)));
  CHECK(P.coefficient(2) == PiNumber::pi2_power(1, 1));
  const Frequency f = frequency(s12, one, Rational(1), t);
  CHECK(f.exact == PiNumber(Rational(1, 4)));
  // S20 separating: V_{1,1}(x)^2 x, leading x^5/48^2
  const Frequency f20 = frequency(builtin_cut("S20/sep"), one, Rational(1), t);
  CHECK(f20.exact == PiNumber(Rational(1, 2304 * 6)));
}

TEST_CASE("b from frequencies on S11") {
  const VolumeTable t = shipped();
  std::vector<MulticurveType> types = {{"S11/nonsep", builtin_cut("S11/nonsep"), star(Rational(1, 2))}};
  for (int cap : {1, 10, 100}) {
    const FrequencySum fs = b_from_frequencies(SurfaceType(1, 1), t, types, cap);
    REQUIRE(fs.closed_form);
    CHECK(*fs.closed_form == PiNumber::pi2_power(1, Rational(1, 24)));
    const double gap = fs.closed_form->to_double() - fs.partial_value;
    CHECK(gap >= 0);
    CHECK(gap <= fs.tail_bound * (1 + 1e-12));
    CHECK(fs.tail_bound <= 0.5 / (2.0 * cap) * (1 + 1e-12));
  }
  const FrequencySum f3 = b_from_frequencies(SurfaceType(1, 1), t, types, 3);
  CHECK(f3.partial == PiNumber(Rational(1, 4) + Rational(1, 16) + Rational(1, 36)));
  std::vector<MulticurveType> parity = {
      {"S11/nonsep", builtin_cut("S11/nonsep"), {{{"o", Rational(1)}, {"e", Rational(1, 2)}}, "test"}}};
  const FrequencySum fp = b_from_frequencies(SurfaceType(1, 1), t, parity, 50);
  REQUIRE(fp.closed_form);
  // odd q: (1/2) (1 - 1/4) zeta(2); even q: (1/4)(1/4) zeta(2)
  CHECK(fp.closed_form->to_double() ==
        doctest::Approx((0.5 * 0.75 + 0.25 * 0.25) * std::numbers::pi * std::numbers::pi / 6));
  CHECK(std::fabs(fp.closed_form->to_double() - fp.partial_value) <= fp.tail_bound);
  std::vector<MulticurveType> wrong = {{"S04/sep", builtin_cut("S04/sep"), star(Rational(1))}};
  CHECK_THROWS_AS(b_from_frequencies(SurfaceType(1, 1), t, wrong, 10), ConfigError);
}

TEST_CASE("joint frequencies and statistics") {
  CHECK(joint_frequency(0.25, 0.0625, 0.23, 0.41) == doctest::Approx(0.23 / (0.41 * 0.41) * 0.25 * 0.0625));
  CHECK_THROWS_AS(joint_frequency(0.1, 0.1, 0.0, 1.0), DomainError);
  const double c[] = {0.25, 0.0625};
  const auto st = statistics(c, 0.23, 0.41, 0.82);
  CHECK(st.expectation[1] == doctest::Approx(0.0625 / 0.82));
  CHECK(st.variance_B == doctest::Approx(0.23 / 0.82 - 0.41 * 0.41 / (0.82 * 0.82)));
  CHECK(st.covariance[0][1] == doctest::Approx(joint_frequency(0.25, 0.0625, 0.23, 0.41) / 0.82 -
                                               0.25 * 0.0625 / (0.82 * 0.82)));
  const PiFraction m(PiNumber::pi2_power(1, Rational(1, 12)));
  const PiFraction b(PiNumber::pi2_power(1, Rational(1, 24)));
  const PiFraction a(PiNumber::pi2_power(2, Rational(1, 450)));
  const PiFraction cs[] = {PiFraction(PiNumber(Rational(1, 4)))};
  const auto sp = statistics(cs, a, b, m);
  CHECK(sp.variance_B == a / m - b * b / (m * m));
}

TEST_CASE("rational rounding and kappa calibration") {
  CHECK(round_rational(0.5004, 0.002, 12) == Rational(1, 2));
  CHECK_FALSE(round_rational(0.3711, 0.0001, 12).has_value());
  CHECK_THROWS_AS(round_rational(0.5, 0.05, 12), NumericError);
  const VolumeTable t = shipped();
  const Rational one[] = {Rational(1)};
  auto oracle = [](double L) { return MCResult{0.25 * L * L * 1.001, 0.0005 * L * L, 1000, 1}; };
  const KappaEstimate k = calibrate_kappa(builtin_cut("S11/nonsep"), one, t, oracle, 40.0);
  CHECK(k.value == doctest::Approx(0.5005));
  CHECK(k.simplex_integral == doctest::Approx(800.0));
  CHECK(k.rational == Rational(1, 2));
}

TEST_CASE("kappa table lookup") {
  KappaTable kt{{{"o", Rational(1)}, {"e", Rational(1, 2)}}, ""};
  const std::int64_t odd[] = {3}, even[] = {4};
  CHECK(kt.find(odd) == Rational(1));
  CHECK(kt.find(even) == Rational(1, 2));
  CHECK(kt.max_value() == Rational(1));
  CHECK(star(Rational(2)).find(even) == Rational(2));
}
