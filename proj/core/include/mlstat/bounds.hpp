#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlstat/hypfun.hpp"
#include "mlstat/surface.hpp"

namespace mlstat {

// Fenchel-Nielsen coordinates relative to the active pants decomposition.
struct FNPoint {
  std::vector<double> lengths;
  std::vector<double> twists;

  FNPoint() = default;
  FNPoint(std::vector<double> l, std::vector<double> t);  // validates
  std::size_t size() const { return lengths.size(); }
};

// Lower/upper constants of the sandwich C1 F <= B <= C2 F, fitted on torus samples.
struct SandwichConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  bool calibrated() const { return c1 > 0.0 && c2 >= c1; }
};

struct BoundReport {
  double f_value = 0.0;
  double lower = 0.0;  // C1 F, zero when C1 is not calibrated
  double comb_value = 0.0;
  double upper = 0.0;
  double C = 0.0;
  double M = 0.0;
  double epsilon = 0.0;
  int thin_count = 0;
  std::optional<double> count_upper;  // filled when a length cutoff is supplied

  std::string to_json() const;
};

// prod over thin cuffs of R(l_i)
double f_value(const FNPoint& fn, double eps);

// mu_Thu of the combinatorial unit ball, weights (w(l_i), l_i)
double b_comb(const SurfaceType& s, const FNPoint& fn);

// C^{2N} 2^{g+k} M^{N-k} / (2N)! * prod_thin R(l_i); needs every l_i <= bersBound.
double b_upper(const SurfaceType& s, const FNPoint& fn, const Constants& c);

// Lower end L_0 = bersBound / C of the range where count_upper holds.
double count_threshold(const Constants& c);

// (3g-2+n)^N 8^N C^{2N} 2^k M^{N-k} prod_thin R(l_i), bounds s(X, eta, L) / L^{2N}.
double count_upper(const SurfaceType& s, const FNPoint& fn, double L, const Constants& c);

BoundReport bound_report(const SurfaceType& s, const FNPoint& fn, const Constants& c,
                         const SandwichConstants& sw = {}, std::optional<double> L = std::nullopt);

// min/max of the ratios B/F widened by `margin` (>= 1).
SandwichConstants calibrate_sandwich(const std::vector<double>& ratios, double margin);

}  // namespace mlstat
