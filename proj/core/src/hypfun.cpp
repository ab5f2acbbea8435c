#include "mlstat/hypfun.hpp"

#include <cmath>
#include <string>

#include "mlstat/errors.hpp"

namespace mlstat {

double collar_width(double x) {
  if (!(x > 0.0)) throw DomainError("collar_width: length must be positive, got " + std::to_string(x));
  return std::asinh(1.0 / std::sinh(0.5 * x));
}

double r_weight(double x) {
  if (!(x > 0.0)) throw DomainError("r_weight: argument must be positive, got " + std::to_string(x));
  if (x == 1.0) throw DomainError("r_weight: singular at x = 1");
  return 1.0 / (x * std::fabs(std::log(x)));
}

double h_weight(double x) { return 1.0 / (x * collar_width(x)); }

double h_max(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("h_max: need 0 < lo < hi");
  // Dense scan, then golden-section on the bracket around the best node.
  constexpr int kGrid = 2048;
  const double step = (hi - lo) / kGrid;
  int best = 0;
  double best_val = h_weight(lo);
  for (int i = 1; i <= kGrid; ++i) {
    double v = h_weight(i == kGrid ? hi : lo + i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best == kGrid) return best_val;

  double a = lo + (best - 1) * step, b = lo + (best + 1) * step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = h_weight(c), fd = h_weight(d);
  while (b - a > 1e-12 * (1.0 + std::fabs(a))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = h_weight(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = h_weight(d);
    }
  }
  return std::max(best_val, h_weight(0.5 * (a + b)));
}

std::vector<int> thin_cuffs(std::span<const double> lengths, double eps) {
  std::vector<int> out;
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (lengths[i] <= eps) out.push_back(static_cast<int>(i));
  return out;
}

void Constants::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("constants: epsilon must lie in (0,1)");
  if (!(bers_bound > 1.0)) throw DomainError("constants: bersBound must exceed 1");
  if (!(comparison_c >= 1.0)) throw DomainError("constants: comparisonC must be >= 1");
  if (!(epsilon < bers_bound)) throw DomainError("constants: epsilon must be below bersBound");
}

Constants Constants::defaults_for(const SurfaceType& s) {
  Constants c;
  if (s == SurfaceType(1, 1)) {
    c.bers_bound = kTorusBersBound;
  } else if (s == SurfaceType(0, 4)) {
    c.bers_bound = 2.0 * std::acosh(3.0);  // maximal systole of S04
  } else {
    c.bers_bound = 10.0;  // no sharp value known here; override in config
  }
  return c;
}

}  // namespace mlstat
