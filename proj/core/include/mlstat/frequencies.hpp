#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlstat/pi_poly.hpp"
#include "mlstat/surface.hpp"
#include "mlstat/volumes.hpp"
#include "mlstat/wp_cells.hpp"

namespace mlstat {

// One component of S minus gamma. Boundary slots carry the cut-curve label 1..k or kCusp.
struct CutPiece {
  SurfaceType surface;
  std::vector<int> boundary;
};

struct CutData {
  SurfaceType whole;
  int components = 0;  // k
  std::vector<CutPiece> pieces;

  // Euler characteristic additivity, slot counts, each label used exactly twice
  void validate() const;
};

// V(gamma, x): product over pieces of their volume polynomials, boundary slots substituted by x_label.
PiPoly cut_volume(const CutData& cut, const VolumeTable& table);

// int over {a.x <= L, x >= 0} of prod x_i^{e_i}  =  coeff * L^degree
struct SimplexTerm {
  Rational coeff;
  int degree = 0;
};
SimplexTerm simplex_monomial_integral(std::span<const int> e, std::span<const Rational> a);

// P(L, a.gamma) = kappa * int_{a.x <= L} V(gamma, x) x_1 ... x_k dx
LPolynomial count_polynomial(const CutData& cut, std::span<const Rational> a, const Rational& kappa,
                             const VolumeTable& table);

struct Frequency {
  PiNumber exact;
  double value = 0.0;
};
Frequency frequency(const CutData& cut, std::span<const Rational> a, const Rational& kappa, const VolumeTable& table);

// kappa per weight-parity class; key is a string of 'o'/'e' per component, "*" matches anything.
struct KappaTable {
  std::map<std::string, Rational> values;
  std::string provenance;

  std::optional<Rational> find(std::span<const std::int64_t> a) const;
  Rational max_value() const;
};

struct MulticurveType {
  std::string name;
  CutData cut;
  KappaTable kappa;
};

struct FrequencySum {
  PiNumber partial;        // exact sum over weights in [1, cap]^k, all types
  double partial_value = 0.0;
  double tail_bound = 0.0;  // rigorous bound on the omitted weights
  std::optional<PiNumber> closed_form;  // full series, when every kappa is parity-resolved
  int cap = 0;
};

FrequencySum b_from_frequencies(const SurfaceType& s, const VolumeTable& table, std::span<const MulticurveType> types,
                                int cap);

// c(g1, g2) = (a / b^2) c1 c2
double joint_frequency(double c1, double c2, double a, double b);
PiFraction joint_frequency(const PiFraction& c1, const PiFraction& c2, const PiFraction& a, const PiFraction& b);

template <class F>
struct Statistics {
  std::vector<F> expectation;  // E(gamma_i) = c_i / m
  std::vector<std::vector<F>> covariance;  // c(g_i, g_j)/m - c_i c_j / m^2
  F variance_B;  // a/m - b^2/m^2
};

Statistics<double> statistics(std::span<const double> c, double a, double b, double m);
Statistics<PiFraction> statistics(std::span<const PiFraction> c, const PiFraction& a, const PiFraction& b,
                                  const PiFraction& m);

// Small-denominator rational within tol of x; nullopt when none, throws NumericError when two
// candidates with denominator <= max_den are both within tol (ambiguous rounding).
std::optional<Rational> round_rational(double x, double tol, int max_den);

struct KappaEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double L = 0.0;
  double simplex_integral = 0.0;  // int V x over {a.x <= L} at kappa = 1
  std::optional<Rational> rational;
};

// countingOracle(L) = MC estimate of int s(X, a.gamma, L) dmu_wp.
using CountingOracle = std::function<MCResult(double L)>;
KappaEstimate calibrate_kappa(const CutData& cut, std::span<const Rational> a, const VolumeTable& table,
                              const CountingOracle& oracle, double L, int max_den = 12);

// Builtin multicurve types: S11/nonsep, S04/sep, S12/nonsep, S12/sep.
CutData builtin_cut(const std::string& name);
std::vector<std::string> builtin_cut_names();

}  // namespace mlstat
