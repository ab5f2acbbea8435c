#pragma once

#include <span>
#include <vector>

#include "mlstat/surface.hpp"

namespace mlstat {

// w(x) = asinh(1 / sinh(x/2)), half-width of the standard collar.
double collar_width(double x);

// R(x) = 1 / (x |log x|); singular at 0 and 1.
double r_weight(double x);

// H(x) = 1 / (x w(x)).
double h_weight(double x);

// max of H over [lo, hi], relative tolerance 1e-9.
double h_max(double lo, double hi);

// 0-based indices i with lengths[i] <= eps.
std::vector<int> thin_cuffs(std::span<const double> lengths, double eps);

// Maximal systole of S11, 2 acosh(3/2).
inline constexpr double kTorusBersBound = 1.9248473002384139;

struct Constants {
  double epsilon = 0.1;
  double bers_bound = kTorusBersBound;
  double comparison_c = 1.0;

  // throws DomainError
  void validate() const;
  static Constants defaults_for(const SurfaceType& s);
};

}  // namespace mlstat
