#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlstat/wp_cells.hpp"

namespace mlstat {

// Once-punctured torus with base curve alpha of length ell and twist tau.
struct TorusPoint {
  double ell = 1.0;
  double tau = 0.0;

  void validate() const;  // throws DomainError
};

// Traces of alpha, beta, alpha*beta. x^2 + y^2 + z^2 = xyz.
struct FrickeTriple {
  double x = 0.0, y = 0.0, z = 0.0;

  double markov_residual() const;  // |x^2+y^2+z^2-xyz| / (x^2+y^2+z^2)
};

// Simple closed curve in homology class p[alpha] + q[beta]; normalized with q > 0, or (1, 0).
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  static Slope make(std::int64_t p, std::int64_t q);  // normalizes sign, requires gcd 1
  std::string str() const;
  auto operator<=>(const Slope&) const = default;
};

struct Matrix2 {
  double a, b, c, d;
  double trace() const { return a + d; }
  Matrix2 operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Matrix2 inverse() const { return {d, -b, -c, a}; }
};

// A = diag(e^{l/2}, e^{-l/2}); B has positive off-diagonal entries at tau = 0 and is
// multiplied by diag(e^{-tau/2}, e^{tau/2}). tr[A, B] = -2. With this orientation the
// slope n/1 has trace 2 coth(l/2) cosh((tau - n l)/2), so (l, l/2) with l = 2 acosh(3/2)
// is the hexagonal torus with triple (3, 3, 3).
std::pair<Matrix2, Matrix2> generator_matrices(const TorusPoint& X);

FrickeTriple fn_to_triple(const TorusPoint& X);

double slope_trace(const TorusPoint& X, Slope s);
double slope_length(const TorusPoint& X, Slope s);
double trace_to_length(double trace);  // throws GeometryError for trace <= 2

struct SlopeLength {
  Slope slope;
  double length;
};

// Every slope with length <= L, sorted by (length, slope).
std::vector<SlopeLength> enumerate_short_slopes(const TorusPoint& X, double L);
// Same set, lengths only, unsorted (hot path for counting).
std::vector<double> short_slope_lengths(const TorusPoint& X, double L);

std::uint64_t count_s(const TorusPoint& X, int k, double L);
std::uint64_t count_b(const TorusPoint& X, double L);
// from a list of lengths already enumerated up to at least L (or L/k)
std::uint64_t count_s(std::span<const double> lengths, int k, double L);
std::uint64_t count_b(std::span<const double> lengths, double L);

struct BEstimate {
  std::vector<std::pair<double, double>> ladder;  // (L, count_b / L^2), ascending L
  double value = 0.0;       // last entry
  double rel_change = 0.0;  // relative change over the last doubling
};

// Ladder Lmax / 2^j down to L >= 5.
BEstimate estimate_B(const TorusPoint& X, double Lmax);
BEstimate estimate_B(std::span<const double> lengths, double Lmax);

struct Systole {
  Slope slope;
  double length = 0.0;
  int multiplicity = 1;
  bool base_is_systole = false;  // alpha = 1/0 is among the shortest
};

Systole systole_slope(const TorusPoint& X);

struct ModuliOptions {
  double bers_bound = 1.9248473002384139;
  int symmetry_factor = 2;
  unsigned threads = 1;
};

// Uniform point of the Bers box {0 < l <= bersBound, 0 <= tau < l} w.r.t. dl dtau.
TorusPoint moduli_box_point(const CounterRng& rng, std::uint64_t index, double bers_bound);

// Weighted samples of one or more functionals over the fundamental domain.
struct ModuliSamples {
  std::size_t count = 0;
  std::size_t functionals = 0;
  double box_volume = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t kept = 0;
  std::vector<double> values;  // row-major (sample, functional), already multiplied by the domain weight

  // estimate and stderr of functional j from the first n samples (n = 0 means all)
  MCResult result(std::size_t j, std::size_t n = 0) const;
  // sample covariance of the estimates of functionals i and j
  double covariance(std::size_t i, std::size_t j, std::size_t n = 0) const;
};

using TorusFunctional = std::function<double(const TorusPoint&)>;
using TorusVectorFunctional = std::function<void(const TorusPoint&, std::span<double>)>;

MCResult mc_moduli(const TorusFunctional& f, std::size_t samples, std::uint64_t seed, const ModuliOptions& opt);
ModuliSamples mc_moduli_multi(const TorusVectorFunctional& f, std::size_t functionals, std::size_t samples,
                              std::uint64_t seed, const ModuliOptions& opt);

// Points of the fundamental domain {alpha systole, 0 <= tau < l} drawn by rejection from the box.
std::vector<TorusPoint> sample_fundamental_domain(std::size_t count, std::uint64_t seed, double bers_bound);

// max over slopes s with length <= L of max(l_s / L_P, L_P / l_s), where L_P is the combinatorial
// length of the Dehn-Thurston point (m, t) = (q, p) for weights (w(ell), ell).
double comparison_ratio(const TorusPoint& X, double L);

}  // namespace mlstat
