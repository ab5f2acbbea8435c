#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mlstat/surface.hpp"

namespace mlstat {

struct DTPoint {
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> t;

  bool is_zero() const;
  bool operator==(const DTPoint&) const = default;
};

struct DTRealPoint {
  std::vector<double> m;
  std::vector<double> t;

  bool operator==(const DTRealPoint&) const = default;
};

// Per-cuff (width, length) weights of the combinatorial length.
struct CombWeights {
  std::vector<double> width;
  std::vector<double> length;

  CombWeights() = default;
  // throws DomainError on size mismatch or non-positive / non-finite entries
  CombWeights(std::vector<double> w, std::vector<double> l);
  // (collar_width(l_i), l_i)
  static CombWeights from_lengths(std::span<const double> lengths);

  std::size_t size() const { return width.size(); }
};

bool in_lambda(const DTPoint& p, const PantsDecomposition& dec);
bool in_theta(const DTRealPoint& p);

// cuff is 0-based; t_i += k m_i
DTPoint twist(DTPoint p, int cuff, std::int64_t k);
DTRealPoint twist(DTRealPoint p, int cuff, std::int64_t k);

DTRealPoint scale(DTRealPoint p, double c);

double comb_length(const DTPoint& p, const CombWeights& wts);
double comb_length(const DTRealPoint& p, const CombWeights& wts);

using DTVisitor = std::function<void(const DTPoint&)>;

// Nonzero points of Lambda with comb_length <= L, lexicographic in (m1, t1, m2, t2, ...).
void enumerate_ball(const PantsDecomposition& dec, const CombWeights& wts, double L, const DTVisitor& visit);
std::vector<DTPoint> ball_points(const PantsDecomposition& dec, const CombWeights& wts, double L);
std::uint64_t count_ball(const PantsDecomposition& dec, const CombWeights& wts, double L);

}  // namespace mlstat
