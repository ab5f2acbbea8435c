#include "mlstat/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mlstat/errors.hpp"
#include "mlstat/thurston.hpp"

namespace mlstat {

FNPoint::FNPoint(std::vector<double> l, std::vector<double> t) : lengths(std::move(l)), twists(std::move(t)) {
  if (twists.empty()) twists.assign(lengths.size(), 0.0);
  if (twists.size() != lengths.size()) throw DomainError("FNPoint: lengths/twists size mismatch");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i]))
      throw DomainError("FNPoint: length of cuff " + std::to_string(i + 1) + " must be positive and finite");
    if (!std::isfinite(twists[i])) throw DomainError("FNPoint: twist of cuff " + std::to_string(i + 1) + " not finite");
  }
}

namespace {

void check_size(const SurfaceType& s, const FNPoint& fn) {
  if (static_cast<int>(fn.size()) != s.cuff_count())
    throw DomainError("FNPoint has " + std::to_string(fn.size()) + " cuffs, surface " + s.name() + " has " +
                      std::to_string(s.cuff_count()));
}

void check_bers(const FNPoint& fn, const Constants& c) {
  for (std::size_t i = 0; i < fn.size(); ++i)
    if (fn.lengths[i] > c.bers_bound)
      throw DomainError("cuff " + std::to_string(i + 1) + " has length " + std::to_string(fn.lengths[i]) +
                        " above bersBound " + std::to_string(c.bers_bound) +
                        "; pass a systole-adapted decomposition");
}

double thin_product(const FNPoint& fn, double eps, int& k) {
  double p = 1.0;
  k = 0;
  for (int i : thin_cuffs(fn.lengths, eps)) {
    p *= r_weight(fn.lengths[i]);
    ++k;
  }
  return p;
}

}  // namespace

double f_value(const FNPoint& fn, double eps) {
  int k = 0;
  return thin_product(fn, eps, k);
}

double b_comb(const SurfaceType& s, const FNPoint& fn) {
  check_size(s, fn);
  return comb_ball_measure(s, CombWeights::from_lengths(fn.lengths));
}

double b_upper(const SurfaceType& s, const FNPoint& fn, const Constants& c) {
  check_size(s, fn);
  c.validate();
  check_bers(fn, c);
  const int N = s.cuff_count();
  int k = 0;
  const double R = thin_product(fn, c.epsilon, k);
  const double M = h_max(c.epsilon, c.bers_bound);
  return std::pow(c.comparison_c, 2 * N) * std::ldexp(1.0, s.genus + k) * std::pow(M, N - k) /
         std::tgamma(2.0 * N + 1.0) * R;
}

double count_threshold(const Constants& c) { return c.bers_bound / c.comparison_c; }

double count_upper(const SurfaceType& s, const FNPoint& fn, double L, const Constants& c) {
  check_size(s, fn);
  c.validate();
  check_bers(fn, c);
  if (L < count_threshold(c))
    throw DomainError("count_upper: L = " + std::to_string(L) + " below L0 = " + std::to_string(count_threshold(c)));
  const int N = s.cuff_count();
  int k = 0;
  const double R = thin_product(fn, c.epsilon, k);
  const double M = h_max(c.epsilon, c.bers_bound);
  return std::pow(3.0 * s.genus - 2.0 + s.punctures, N) * std::pow(8.0, N) * std::pow(c.comparison_c, 2 * N) *
         std::ldexp(1.0, k) * std::pow(M, N - k) * R;
}

BoundReport bound_report(const SurfaceType& s, const FNPoint& fn, const Constants& c, const SandwichConstants& sw,
                         std::optional<double> L) {
  BoundReport r;
  r.f_value = f_value(fn, c.epsilon);
  r.comb_value = b_comb(s, fn);
  r.upper = b_upper(s, fn, c);
  r.lower = sw.calibrated() ? sw.c1 * r.f_value : 0.0;
  r.C = c.comparison_c;
  r.M = h_max(c.epsilon, c.bers_bound);
  r.epsilon = c.epsilon;
  r.thin_count = static_cast<int>(thin_cuffs(fn.lengths, c.epsilon).size());
  if (L) r.count_upper = count_upper(s, fn, *L, c);
  return r;
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["fValue"] = f_value;
  j["lower"] = lower;
  j["combValue"] = comb_value;
  j["upper"] = upper;
  if (count_upper) j["countUpper"] = *count_upper;
  j["constants"] = {{"C", C}, {"M", M}, {"epsilon", epsilon}, {"k", thin_count}};
  return j.dump(2);
}

SandwichConstants calibrate_sandwich(const std::vector<double>& ratios, double margin) {
  if (ratios.empty()) throw DomainError("calibrate_sandwich: no samples");
  if (!(margin >= 1.0)) throw DomainError("calibrate_sandwich: margin must be >= 1");
  auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  if (!(*lo > 0.0) || !std::isfinite(*hi)) throw NumericError("calibrate_sandwich: ratios must be positive and finite");
  return {*lo / margin, *hi * margin};
}

}  // namespace mlstat
