#pragma once

#include <span>
#include <vector>

#include "mlstat/dt_lattice.hpp"
#include "mlstat/surface.hpp"

namespace mlstat {

// mu_Thu of {sum m_i w_i + |t_i| l_i <= 1}: 2^{g-N} * 2^N/(2N)! * prod 1/(w_i l_i).
double comb_ball_measure(const SurfaceType& s, const CombWeights& wts);

// count_ball / L^{2N}
double lattice_ball_estimate(const PantsDecomposition& dec, const CombWeights& wts, double L);

enum class MeasureNorm { MuThu, NuThu };

// [Z^{2N} : Lambda] = 2^{2g-3+n}
double lambda_index(const SurfaceType& s);

// nu_Thu = lambda_index * mu_Thu
double normalize(double value, MeasureNorm from, MeasureNorm to, const SurfaceType& s);

struct ConvergencePoint {
  double L;
  double estimate;
  double rel_error;
};

struct ConvergenceFit {
  double closed_form = 0.0;
  std::vector<ConvergencePoint> ladder;
  double K = 0.0;      // max over the ladder of L * |estimate - closed|
  double slope = 0.0;  // least-squares slope of log|error| against log L
};

ConvergenceFit fit_convergence(const PantsDecomposition& dec, const CombWeights& wts, std::span<const double> ladder);

}  // namespace mlstat
