#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "mlstat/errors.hpp"
#include "mlstat/hypfun.hpp"
#include "mlstat/wp_cells.hpp"

using namespace mlstat;
namespace q = boost::math::quadrature;

TEST_CASE("cell factors against quadrature") {
  const double eps = 0.1, L = kTorusBersBound;
  CHECK(thin_f2_factor(eps) == doctest::Approx(1.0 / std::log(10.0)).epsilon(1e-14));
  CHECK(thick_factor(eps, L) == doctest::Approx((L * L - eps * eps) / 2.0).epsilon(1e-14));
  // int_floor^eps dl / (l log^2 l) directly in l
  for (double fl : {1e-2, 1e-3, 1e-4}) {
    const double v = q::tanh_sinh<double>().integrate(
        [](double l) { return 1.0 / (l * std::log(l) * std::log(l)); }, fl, eps);
    CHECK(thin_f2_factor(eps, fl) == doctest::Approx(v).epsilon(1e-10));
  }
  const SurfaceType s20(2, 0);
  const CellSpec spec{s20, 2, eps, 10.0, 0.0};
  CHECK(f2_cell_integral(spec) == doctest::Approx(std::pow(1.0 / std::log(10.0), 2) * (100.0 - 0.01) / 2.0));
  CHECK(cell_volume(spec) == doctest::Approx(std::pow(eps * eps / 2.0, 2) * (100.0 - 0.01) / 2.0));
  CHECK_THROWS_AS((CellSpec{s20, 4, eps, 10.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((CellSpec{s20, 1, eps, 10.0, 0.2}.validate()), DomainError);
}

TEST_CASE("sampled points lie in the cell") {
  const CellSpec spec{SurfaceType(1, 2), 1, 0.1, 3.0, 1e-3};
  for (const auto& fn : sample_cell(spec, 2000, 5)) {
    CHECK(fn.lengths[0] > 1e-3);
    CHECK(fn.lengths[0] <= 0.1);
    CHECK(fn.lengths[1] > 0.1);
    CHECK(fn.lengths[1] <= 3.0);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(fn.twists[i] >= 0.0);
      CHECK(fn.twists[i] < fn.lengths[i]);
    }
  }
  const CounterRng rng(11);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto cs = draw_cell_sample(spec, Sampling::CuspAdapted, rng, i);
    CHECK(std::exp(cs.log_lengths[0]) == doctest::Approx(cs.fn.lengths[0]));
    CHECK(cs.fn.lengths[0] > 1e-3);
    CHECK(cs.fn.lengths[0] <= 0.1);
  }
}

TEST_CASE("Monte Carlo integrals agree with exact values") {
  const SurfaceType s(1, 2);
  const CellSpec spec{s, 1, 0.1, 2.0, 0.0};
  const auto f2 = mc_integrate_log(log_f_power(2.0, 0.1), spec, 20000, 3, Sampling::CuspAdapted);
  CHECK(std::fabs(f2.estimate - f2_cell_integral(spec)) <= 3 * f2.std_error + 1e-9);
  const auto one = mc_integrate_log(named_functional("one", s, 0.1), spec, 20000, 3, Sampling::CuspAdapted);
  CHECK(std::fabs(one.estimate - cell_volume(spec)) <= 3 * one.std_error);
  // plain functional through the Weil-Petersson sampler: int l_2 over the cell
  const auto lin = mc_integrate([](const FNPoint& fn) { return fn.lengths[1]; }, spec, 20000, 4);
  const double exact = 0.005 * (8.0 - 0.001) / 3.0;
  CHECK(std::fabs(lin.estimate - exact) <= 3 * lin.std_error);
  CHECK(lin.samples == 20000);
  CHECK(lin.seed == 4);
}

TEST_CASE("log functionals match direct evaluation") {
  const SurfaceType s(1, 1);
  const CellSpec spec{s, 1, 0.1, kTorusBersBound, 0.0};
  const CounterRng rng(2);
  const auto bc = log_b_comb(s);
  const auto f25 = named_functional("Fp:0.5", s, 0.1);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto cs = draw_cell_sample(spec, Sampling::CuspAdapted, rng, i);
    const double l = cs.fn.lengths[0];
    if (l < 1e-300) continue;
    CHECK(std::exp(bc(cs)) == doctest::Approx(1.0 / (l * collar_width(l))).epsilon(1e-9));
    CHECK(f25(cs) == doctest::Approx(2.5 * std::log(r_weight(l))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(named_functional("F3", s, 0.1), ConfigError);
  CHECK_THROWS_AS(named_functional("Fp:x", s, 0.1), ConfigError);
  CHECK(parse_sampling("cusp") == Sampling::CuspAdapted);
  CHECK(to_string(parse_sampling("wp")) == "wp");
  CHECK_THROWS_AS(parse_sampling("grid"), ConfigError);
}

TEST_CASE("F^2.5 thin integrals grow without bound") {
  // oracle values of int_floor^0.1 l R(l)^2.5 dl
  const double expect[] = {0.62153, 1.14583, 1.85977, 3.06840, 5.39127};
  const SurfaceType s(1, 1);
  int i = 0;
  for (double fl : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double v = q::gauss_kronrod<double, 61>::integrate(
        [](double u) { return std::exp(0.5 * u) * std::pow(u, -2.5); }, -std::log(0.1), -std::log(fl), 15, 1e-13);
    CHECK(v == doctest::Approx(expect[i++]).epsilon(1e-4));
    const CellSpec spec{s, 1, 0.1, kTorusBersBound, fl};
    const auto mc = mc_integrate_log(log_f_power(2.5, 0.1), spec, 20000, 9, Sampling::CuspAdapted);
    CHECK(std::fabs(mc.estimate - v) <= 4 * mc.std_error);
  }
}

TEST_CASE("pants gluing sampler") {
  const SurfaceType s(2, 0);
  for (const auto& fn : sample_pants_gluing(s, 5.0, 500, 3)) {
    double sum = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      sum += fn.lengths[i];
      CHECK(fn.twists[i] < fn.lengths[i]);
    }
    CHECK(sum <= 5.0);
  }
}
