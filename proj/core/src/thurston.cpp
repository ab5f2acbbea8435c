#include "mlstat/thurston.hpp"

#include <cmath>

#include "mlstat/errors.hpp"

namespace mlstat {

double comb_ball_measure(const SurfaceType& s, const CombWeights& wts) {
  const int N = s.cuff_count();
  if (static_cast<int>(wts.size()) != N) throw DomainError("comb_ball_measure: weight count != cuff count");
  // 2^N/(2N)! is the volume of {sum m_i + |t_i| <= 1, m_i >= 0}: 2^N orthants of the unit 2N-simplex.
  double v = std::ldexp(1.0, s.genus - N) * std::ldexp(1.0, N) / std::tgamma(2.0 * N + 1.0);
  for (std::size_t i = 0; i < wts.size(); ++i) {
    if (!(wts.width[i] > 0.0) || !(wts.length[i] > 0.0)) throw DomainError("comb_ball_measure: nonpositive weight");
    v /= wts.width[i] * wts.length[i];
  }
  return v;
}

double lattice_ball_estimate(const PantsDecomposition& dec, const CombWeights& wts, double L) {
  if (!(L > 0.0)) throw DomainError("lattice_ball_estimate: L must be positive");
  return static_cast<double>(count_ball(dec, wts, L)) / std::pow(L, dec.surface.dim());
}

double lambda_index(const SurfaceType& s) { return std::ldexp(1.0, 2 * s.genus - 3 + s.punctures); }

double normalize(double value, MeasureNorm from, MeasureNorm to, const SurfaceType& s) {
  if (from == to) return value;
  return from == MeasureNorm::MuThu ? value * lambda_index(s) : value / lambda_index(s);
}

ConvergenceFit fit_convergence(const PantsDecomposition& dec, const CombWeights& wts, std::span<const double> ladder) {
  ConvergenceFit fit;
  fit.closed_form = comb_ball_measure(dec.surface, wts);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double L : ladder) {
    double est = lattice_ball_estimate(dec, wts, L);
    double err = std::fabs(est - fit.closed_form);
    fit.ladder.push_back({L, est, err / fit.closed_form});
    fit.K = std::max(fit.K, L * err);
    if (err > 0) {
      double x = std::log(L), y = std::log(err);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  if (n >= 2) fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace mlstat
