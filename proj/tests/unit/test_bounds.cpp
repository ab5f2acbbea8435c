#include <doctest.h>

#include <cmath>
#include <random>

#include "mlstat/bounds.hpp"
#include "mlstat/errors.hpp"
#include "mlstat/thurston.hpp"

using namespace mlstat;

TEST_CASE("f_value is the product over thin cuffs") {
  CHECK(f_value(FNPoint({0.5}, {0.0}), 0.1) == 1.0);
  CHECK(f_value(FNPoint({0.05}, {0.0}), 0.1) == doctest::Approx(r_weight(0.05)));
  CHECK(f_value(FNPoint({0.05, 1.0, 0.01}, {}), 0.1) == doctest::Approx(r_weight(0.05) * r_weight(0.01)));
  CHECK_THROWS_AS(FNPoint({0.0}, {0.0}), DomainError);
  CHECK_THROWS_AS(FNPoint({1.0, 1.0}, {0.0}), DomainError);
}

TEST_CASE("b_comb matches the closed form with collar weights") {
  const SurfaceType s(1, 1);
  const FNPoint fn({0.7}, {0.1});
  CHECK(b_comb(s, fn) == doctest::Approx(1.0 / (0.7 * collar_width(0.7))));
  CHECK_THROWS_AS(b_comb(SurfaceType(2, 0), fn), DomainError);
}

TEST_CASE("upper bound dominates the combinatorial value") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> logu(std::log(1e-8), std::log(1.9));
  for (const auto& [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 4}, {1, 2}, {2, 0}}) {
    const SurfaceType s(g, n);
    Constants c;
    c.bers_bound = s == SurfaceType(1, 1) ? kTorusBersBound : Constants::defaults_for(s).bers_bound;
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> l;
      for (int i = 0; i < s.cuff_count(); ++i) l.push_back(std::exp(logu(gen)));
      const FNPoint fn(l, {});
      CAPTURE(s.name());
      CHECK(b_comb(s, fn) <= b_upper(s, fn, c));
    }
  }
}

TEST_CASE("upper bound formula and errors") {
  const SurfaceType s(1, 1);
  Constants c;
  c.comparison_c = 2.0;
  const double M = h_max(c.epsilon, c.bers_bound);
  CHECK(b_upper(s, FNPoint({1.0}, {}), c) == doctest::Approx(4.0 * 2.0 * M / 2.0));
  CHECK(b_upper(s, FNPoint({0.01}, {}), c) == doctest::Approx(4.0 * 4.0 / 2.0 * r_weight(0.01)));
  try {
    b_upper(s, FNPoint({2.5}, {}), c);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("cuff 1") != std::string::npos);
  }
  CHECK(count_threshold(c) == doctest::Approx(kTorusBersBound / 2.0));
  CHECK_THROWS_AS(count_upper(s, FNPoint({1.0}, {}), 0.5, c), DomainError);
  // (3g-2+n)^N 8^N C^2N 2^k M^{N-k} prod R
  CHECK(count_upper(s, FNPoint({1.0}, {}), 10.0, c) == doctest::Approx(2.0 * 8.0 * 4.0 * M));
  CHECK(count_upper(s, FNPoint({0.05}, {}), 10.0, c) == doctest::Approx(2.0 * 8.0 * 4.0 * 2.0 * r_weight(0.05)));
}

TEST_CASE("bound report") {
  const SurfaceType s(1, 1);
  Constants c;
  const auto r = bound_report(s, FNPoint({0.05}, {0.01}), c, {0.5, 2.0}, 20.0);
  CHECK(r.thin_count == 1);
  CHECK(r.lower == doctest::Approx(0.5 * r_weight(0.05)));
  CHECK(r.count_upper.has_value());
  CHECK(r.to_json().find("\"countUpper\"") != std::string::npos);
  const auto r0 = bound_report(s, FNPoint({0.5}, {0.0}), c);
  CHECK(r0.lower == 0.0);
  CHECK_FALSE(r0.count_upper.has_value());
}

TEST_CASE("sandwich calibration") {
  const auto sw = calibrate_sandwich({0.5, 2.0, 1.0}, 1.1);
  CHECK(sw.c1 == doctest::Approx(0.5 / 1.1));
  CHECK(sw.c2 == doctest::Approx(2.2));
  CHECK(sw.calibrated());
  CHECK_FALSE(SandwichConstants{}.calibrated());
  CHECK_THROWS_AS(calibrate_sandwich({}, 1.1), DomainError);
  CHECK_THROWS_AS(calibrate_sandwich({1.0}, 0.9), DomainError);
  CHECK_THROWS_AS(calibrate_sandwich({0.0, 1.0}, 1.1), NumericError);
}
