#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "mlstat/errors.hpp"
#include "mlstat/hypfun.hpp"
#include "mlstat/torus.hpp"

using namespace mlstat;

namespace {

const double kSym = kTorusBersBound;
const TorusPoint kSymmetric{kSym, kSym / 2};

// Trace of the Christoffel word with |p| letters A^{sign p} and q letters B, multiplied out
// as matrices; independent of the Farey recursion used by the library.
double word_trace(const TorusPoint& X, std::int64_t p, std::int64_t q) {
  auto [A, B] = generator_matrices(X);
  if (p < 0) A = A.inverse();
  const std::int64_t n = std::abs(p) + q;
  Matrix2 M{1, 0, 0, 1};
  for (std::int64_t i = 1; i <= n; ++i) {
    const bool b = (i * q) / n != ((i - 1) * q) / n;
    M = M * (b ? B : A);
  }
  return std::fabs(M.trace());
}

double word_length(const TorusPoint& X, std::int64_t p, std::int64_t q) {
  return 2.0 * std::acosh(word_trace(X, p, q) / 2.0);
}

// every primitive slope with q <= 20, |p| <= 40 and length <= L
std::vector<SlopeLength> brute_force(const TorusPoint& X, double L) {
  std::vector<SlopeLength> out;
  if (word_length(X, 1, 0) <= L) out.push_back({Slope::make(1, 0), word_length(X, 1, 0)});
  for (std::int64_t q = 1; q <= 20; ++q)
    for (std::int64_t p = -40; p <= 40; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const double l = word_length(X, p, q);
      if (l <= L) out.push_back({Slope::make(p, q), l});
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.slope < b.slope; });
  return out;
}

std::vector<TorusPoint> random_points(std::size_t n, std::uint64_t seed, double lo = 0.3) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<TorusPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = lo + (kSym - lo) * u(gen);
    out.push_back({l, u(gen) * l});
  }
  return out;
}

}  // namespace

TEST_CASE("Fricke triple and Markov identity") {
  const FrickeTriple t = fn_to_triple(kSymmetric);
  CHECK(t.x == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(t.y == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(t.z == doctest::Approx(3.0).epsilon(1e-12));
  for (const auto& X : random_points(200, 1, 0.01)) {
    const FrickeTriple f = fn_to_triple(X);
    CHECK(f.markov_residual() < 1e-12);
    CHECK(f.x == doctest::Approx(2.0 * std::cosh(X.ell / 2.0)));
    auto [A, B] = generator_matrices(X);
    CHECK((A * B * A.inverse() * B.inverse()).trace() == doctest::Approx(-2.0).epsilon(1e-9));
  }
}

TEST_CASE("slope traces at the symmetric point") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}}) {
    CHECK(slope_length(kSymmetric, Slope::make(p, q)) == doctest::Approx(kSym).epsilon(1e-12));
  }
  CHECK(slope_trace(kSymmetric, Slope::make(2, 1)) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(slope_length(kSymmetric, Slope::make(2, 1)) == doctest::Approx(2.0 * std::acosh(3.0)).epsilon(1e-12));
  CHECK(slope_length(kSymmetric, Slope::make(2, 1)) == doctest::Approx(3.5254943481).epsilon(1e-10));
  // 1/2 from the two Farey parent pairs (0/1, 1/1) and (1/1, ...) agree with the word
  const TorusPoint X{0.9, 0.3};
  CHECK(slope_trace(X, Slope::make(1, 2)) == doctest::Approx(word_trace(X, 1, 2)).epsilon(1e-9));
  CHECK_THROWS_AS(trace_to_length(2.0), GeometryError);
  CHECK_THROWS_AS(Slope::make(2, 4), DomainError);
  CHECK(Slope::make(-1, -2) == Slope::make(1, 2));
  CHECK(Slope::make(-1, 0) == Slope::make(1, 0));
}

TEST_CASE("slope traces equal Christoffel word traces") {
  for (const auto& X : random_points(20, 2, 0.05)) {
    for (std::int64_t q = 0; q <= 7; ++q)
      for (std::int64_t p = -9; p <= 9; ++p) {
        if (std::gcd(p, q) != 1) continue;
        if (q == 0 && p != 1) continue;
        CHECK(slope_trace(X, Slope::make(p, q)) == doctest::Approx(word_trace(X, p, q)).epsilon(1e-9));
      }
  }
}

TEST_CASE("pruned enumeration equals brute force at L = 6") {
  for (const auto& X : random_points(10, 3)) {
    auto got = enumerate_short_slopes(X, 6.0);
    CHECK(std::is_sorted(got.begin(), got.end(), [](const auto& a, const auto& b) { return a.length < b.length; }));
    std::sort(got.begin(), got.end(), [](const auto& a, const auto& b) { return a.slope < b.slope; });
    const auto ref = brute_force(X, 6.0);
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(got[i].slope == ref[i].slope);
      CHECK(got[i].length == doctest::Approx(ref[i].length).epsilon(1e-9));
    }
    CHECK(short_slope_lengths(X, 6.0).size() == ref.size());
  }
}

TEST_CASE("symmetric point counts") {
  CHECK(enumerate_short_slopes(kSymmetric, 1.93).size() == 3);
  CHECK(enumerate_short_slopes(kSymmetric, 1.9).empty());
  CHECK(count_b(kSymmetric, 1.93) == 3);
  const Systole s = systole_slope(kSymmetric);
  CHECK(s.multiplicity == 3);
  CHECK(s.length == doctest::Approx(kSym));
  CHECK(s.base_is_systole);
}

TEST_CASE("mapping class invariance under a full twist") {
  for (const auto& X : random_points(10, 4, 0.1)) {
    for (double L : {4.0, 8.0}) {
      auto a = short_slope_lengths(X, L);
      auto b = short_slope_lengths({X.ell, X.tau + X.ell}, L);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-7));
    }
  }
}

TEST_CASE("counting identities") {
  for (const auto& X : random_points(10, 5, 0.05)) {
    const auto lens = short_slope_lengths(X, 60.0);
    for (int k = 1; k <= 6; ++k) CHECK(count_s(lens, k, 60.0) == count_s(X, 1, 60.0 / k));
    CHECK(count_s(X, 3, 40.0) == count_s(lens, 3, 40.0));
    CHECK(count_b(lens, 60.0) >= count_s(lens, 1, 60.0));
    std::uint64_t sum = 0;
    for (int k = 1; k <= 2000; ++k) sum += count_s(lens, k, 60.0);
    CHECK(count_b(lens, 60.0) == sum);
  }
}

TEST_CASE("B estimate ladder") {
  const TorusPoint X{1.1, 0.4};
  const BEstimate b = estimate_B(X, 80.0);
  REQUIRE(b.ladder.size() >= 3);
  for (std::size_t i = 1; i < b.ladder.size(); ++i) CHECK(b.ladder[i].first > b.ladder[i - 1].first);
  CHECK(b.ladder.back().first == 80.0);
  CHECK(b.value == b.ladder.back().second);
  CHECK(std::fabs(b.rel_change) <= 0.1);
  // thin blowup
  CHECK(estimate_B({0.05, 0.0}, 80.0).value > estimate_B({0.1, 0.0}, 80.0).value);
}

TEST_CASE("systole") {
  const Systole s = systole_slope({0.05, 0.01});
  CHECK(s.slope == Slope::make(1, 0));
  CHECK(s.multiplicity == 1);
  CHECK(s.base_is_systole);
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double l = 0.01 + 4.0 * u(gen);
    const TorusPoint X{l, u(gen) * l};
    CHECK(systole_slope(X).length <= kSym + 1e-9);
  }
}

TEST_CASE("moduli Monte Carlo") {
  const ModuliOptions opt{kSym, 2, 1};
  const MCResult m = mc_moduli([](const TorusPoint&) { return 1.0; }, 20000, 3, opt);
  CHECK(std::fabs(m.estimate - std::numbers::pi * std::numbers::pi / 12) <= 3 * m.std_error);
  CHECK_THROWS_AS(mc_moduli([](const TorusPoint&) { return NAN; }, 100, 3, opt), NumericError);
  const ModuliOptions bad{kSym, 3, 1};
  CHECK_THROWS_AS(mc_moduli([](const TorusPoint&) { return 1.0; }, 100, 3, bad), ConfigError);
  for (const auto& X : sample_fundamental_domain(500, 4, kSym)) {
    CHECK(X.ell <= kSym);
    CHECK(X.tau < X.ell);
    CHECK(systole_slope(X).base_is_systole);
  }
}

TEST_CASE("comparison ratio is bounded and at least one") {
  for (const auto& X : random_points(20, 7, 0.001)) {
    const double r = comparison_ratio(X, 40.0);
    CHECK(r >= 1.0);
    CHECK(r < 10.0);
  }
}
