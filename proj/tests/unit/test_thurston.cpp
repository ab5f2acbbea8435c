#include <doctest.h>

#include <cmath>

#include "mlstat/hypfun.hpp"
#include "mlstat/thurston.hpp"

using namespace mlstat;

TEST_CASE("closed form of the combinatorial ball") {
  // S11, N = 1: 2^{0} * 2/2! / (w l)
  CHECK(comb_ball_measure(SurfaceType(1, 1), CombWeights({1.0}, {1.0})) == doctest::Approx(1.0));
  CHECK(comb_ball_measure(SurfaceType(0, 4), CombWeights({1.0}, {1.0})) == doctest::Approx(0.5));
  CHECK(comb_ball_measure(SurfaceType(1, 1), CombWeights({2.0}, {0.25})) == doctest::Approx(2.0));
  // S20, N = 3: 2^{-1} * 8/720
  CHECK(comb_ball_measure(SurfaceType(2, 0), CombWeights({1, 1, 1}, {1, 1, 1})) == doctest::Approx(8.0 / 1440.0));
}

TEST_CASE("closed form equals Lebesgue volume of the half-space polytope") {
  // {m >= 0, sum m_i w_i + |t_i| l_i <= 1} for N = 2 has volume 2^2/4! / prod(w l); times 2^{g-N}
  const CombWeights w({1.3, 0.7}, {0.4, 2.0});
  // Monte Carlo-free check: integrate the polytope volume on a fine grid in (m1, m2)
  const int n = 2000;
  double vol = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double m1 = (i + 0.5) / n / w.width[0], m2 = (j + 0.5) / n / w.width[1];
      const double r = 1.0 - m1 * w.width[0] - m2 * w.width[1];
      if (r <= 0) continue;
      // area of {|t1| l1 + |t2| l2 <= r} = 2 r^2 / (l1 l2)
      vol += 2.0 * r * r / (w.length[0] * w.length[1]) / (double(n) * n * w.width[0] * w.width[1]);
    }
  const double expect = comb_ball_measure(SurfaceType(1, 2), w) / std::ldexp(1.0, 1 - 2);
  CHECK(vol == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("convergence of the lattice count") {
  const auto dec = builtin_surface("S11");
  const CombWeights w = CombWeights::from_lengths(std::vector<double>{0.5});
  const double ladder[] = {100, 200, 400, 800};
  const auto fit = fit_convergence(dec, w, ladder);
  CHECK(fit.ladder.size() == 4);
  CHECK(std::fabs(fit.ladder.back().rel_error) < 0.01);
  CHECK(fit.K >= 0.0);
  const auto s12 = builtin_surface("S12");
  const CombWeights w2({1.0, 1.0}, {1.0, 1.0});
  CHECK(lattice_ball_estimate(s12, w2, 60.0) == doctest::Approx(comb_ball_measure(s12.surface, w2)).epsilon(0.05));
}

TEST_CASE("lattice index and normalizations") {
  CHECK(lambda_index(SurfaceType(1, 1)) == 1.0);
  CHECK(lambda_index(SurfaceType(0, 4)) == 2.0);
  CHECK(lambda_index(SurfaceType(2, 0)) == 2.0);
  CHECK(lambda_index(SurfaceType(1, 2)) == 2.0);
  const SurfaceType s(0, 4);
  CHECK(normalize(1.5, MeasureNorm::MuThu, MeasureNorm::NuThu, s) == 3.0);
  CHECK(normalize(3.0, MeasureNorm::NuThu, MeasureNorm::MuThu, s) == 1.5);
  CHECK(normalize(3.0, MeasureNorm::NuThu, MeasureNorm::NuThu, s) == 3.0);
}
