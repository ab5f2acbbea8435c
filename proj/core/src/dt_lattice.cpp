#include "mlstat/dt_lattice.hpp"

#include <cmath>
#include <string>

#include "mlstat/errors.hpp"
#include "mlstat/hypfun.hpp"

namespace mlstat {

bool DTPoint::is_zero() const {
  for (auto v : m)
    if (v != 0) return false;
  for (auto v : t)
    if (v != 0) return false;
  return true;
}

CombWeights::CombWeights(std::vector<double> w, std::vector<double> l) : width(std::move(w)), length(std::move(l)) {
  if (width.size() != length.size()) throw DomainError("CombWeights: width/length size mismatch");
  for (std::size_t i = 0; i < width.size(); ++i)
    if (!(width[i] > 0.0) || !(length[i] > 0.0) || !std::isfinite(width[i]) || !std::isfinite(length[i]))
      throw DomainError("CombWeights: weights of cuff " + std::to_string(i + 1) + " must be positive and finite");
}

CombWeights CombWeights::from_lengths(std::span<const double> lengths) {
  std::vector<double> w, l(lengths.begin(), lengths.end());
  for (double x : lengths) w.push_back(collar_width(x));
  return CombWeights(std::move(w), std::move(l));
}

namespace {

void check_dims(std::size_t m, std::size_t t, std::size_t n, const char* what) {
  if (m != n || t != n)
    throw DomainError(std::string(what) + ": expected " + std::to_string(n) + " coordinates");
}

// region -> list of cuffs (0-based) with multiplicity
std::vector<std::vector<int>> region_cuffs(const PantsDecomposition& dec) {
  std::vector<std::vector<int>> out;
  for (const auto& r : dec.regions) {
    std::vector<int> c;
    for (int s : r)
      if (s != kCusp) c.push_back(s - 1);
    out.push_back(std::move(c));
  }
  return out;
}

// Bit r of mask(i) toggles when m_i is odd: cuff i touches region r an odd number of times.
std::vector<std::uint64_t> parity_masks(const PantsDecomposition& dec) {
  const int N = dec.cuff_count();
  std::vector<std::uint64_t> mask(N, 0);
  auto rc = region_cuffs(dec);
  for (std::size_t r = 0; r < rc.size(); ++r)
    for (int c : rc[r]) mask[c] ^= (std::uint64_t{1} << r);
  return mask;
}

// Points whose length equals L up to rounding belong to the ball.
double slack(double L) { return 1e-12 * std::max(1.0, L); }

// Number of integer t with |t| * ell <= r, r >= 0.
inline std::int64_t tmax(double r, double ell, double sl) {
  return static_cast<std::int64_t>(std::floor((r + sl) / ell));
}

struct Walker {
  const CombWeights& w;
  const std::vector<std::uint64_t>& mask;
  double sl;
  int N;
};

void walk(const Walker& W, int i, double r, std::uint64_t par, bool zero_so_far, DTPoint& p, const DTVisitor& visit) {
  const double wi = W.w.width[i], li = W.w.length[i];
  const bool last = i + 1 == W.N;
  // m_i = 0 branch only needs t_i >= 0; m_i > 0 requires wi <= r
  for (std::int64_t m = 0;; ++m) {
    const double rm = r - static_cast<double>(m) * wi;
    if (rm < -W.sl) break;
    const std::uint64_t npar = (m & 1) ? (par ^ W.mask[i]) : par;
    if (last && npar != 0) continue;
    const std::int64_t T = tmax(std::max(rm, 0.0), li, W.sl);
    const std::int64_t tlo = m == 0 ? 0 : -T;
    p.m[i] = m;
    for (std::int64_t t = tlo; t <= T; ++t) {
      p.t[i] = t;
      const bool z = zero_so_far && m == 0 && t == 0;
      if (last) {
        if (!z) visit(p);
      } else {
        walk(W, i + 1, rm - static_cast<double>(t < 0 ? -t : t) * li, npar, z, p, visit);
      }
    }
  }
  p.m[i] = 0;
  p.t[i] = 0;
}

std::uint64_t count_walk(const Walker& W, int i, double r, std::uint64_t par) {
  const double wi = W.w.width[i], li = W.w.length[i];
  const bool last = i + 1 == W.N;
  std::uint64_t total = 0;
  for (std::int64_t m = 0;; ++m) {
    const double rm = r - static_cast<double>(m) * wi;
    if (rm < -W.sl) break;
    const std::uint64_t npar = (m & 1) ? (par ^ W.mask[i]) : par;
    const std::int64_t T = tmax(std::max(rm, 0.0), li, W.sl);
    if (last) {
      if (npar != 0) continue;
      total += static_cast<std::uint64_t>(m == 0 ? T + 1 : 2 * T + 1);
    } else {
      const std::int64_t tlo = m == 0 ? 0 : -T;
      for (std::int64_t t = tlo; t <= T; ++t)
        total += count_walk(W, i + 1, rm - static_cast<double>(t < 0 ? -t : t) * li, npar);
    }
  }
  return total;
}

void check_ball_args(const PantsDecomposition& dec, const CombWeights& wts) {
  if (static_cast<int>(wts.size()) != dec.cuff_count())
    throw DomainError("enumerate_ball: weights for " + std::to_string(wts.size()) + " cuffs, surface has " +
                      std::to_string(dec.cuff_count()));
  if (dec.cuff_count() < 1) throw DomainError("enumerate_ball: surface has no cuffs");
  if (dec.regions.size() > 63) throw DomainError("enumerate_ball: too many regions");
}

}  // namespace

bool in_lambda(const DTPoint& p, const PantsDecomposition& dec) {
  const std::size_t N = dec.cuff_count();
  check_dims(p.m.size(), p.t.size(), N, "in_lambda");
  for (std::size_t i = 0; i < N; ++i) {
    if (p.m[i] < 0) return false;
    if (p.m[i] == 0 && p.t[i] < 0) return false;
  }
  for (const auto& cuffs : region_cuffs(dec)) {
    std::int64_t s = 0;
    for (int c : cuffs) s += p.m[c];
    if (s % 2 != 0) return false;
  }
  return true;
}

bool in_theta(const DTRealPoint& p) {
  if (p.m.size() != p.t.size()) return false;
  for (std::size_t i = 0; i < p.m.size(); ++i) {
    if (p.m[i] < 0.0) return false;
    if (p.m[i] == 0.0 && p.t[i] < 0.0) return false;
  }
  return true;
}

DTPoint twist(DTPoint p, int cuff, std::int64_t k) {
  if (cuff < 0 || cuff >= static_cast<int>(p.m.size()))
    throw DomainError("twist: cuff index " + std::to_string(cuff + 1) + " out of range");
  p.t[cuff] += k * p.m[cuff];
  return p;
}

DTRealPoint twist(DTRealPoint p, int cuff, std::int64_t k) {
  if (cuff < 0 || cuff >= static_cast<int>(p.m.size()))
    throw DomainError("twist: cuff index " + std::to_string(cuff + 1) + " out of range");
  p.t[cuff] += static_cast<double>(k) * p.m[cuff];
  return p;
}

DTRealPoint scale(DTRealPoint p, double c) {
  if (!(c > 0.0)) throw DomainError("scale: factor must be positive");
  for (auto& v : p.m) v *= c;
  for (auto& v : p.t) v *= c;
  return p;
}

double comb_length(const DTPoint& p, const CombWeights& wts) {
  check_dims(p.m.size(), p.t.size(), wts.size(), "comb_length");
  double s = 0.0;
  for (std::size_t i = 0; i < wts.size(); ++i)
    s += static_cast<double>(p.m[i]) * wts.width[i] + std::fabs(static_cast<double>(p.t[i])) * wts.length[i];
  return s;
}

double comb_length(const DTRealPoint& p, const CombWeights& wts) {
  check_dims(p.m.size(), p.t.size(), wts.size(), "comb_length");
  double s = 0.0;
  for (std::size_t i = 0; i < wts.size(); ++i) s += p.m[i] * wts.width[i] + std::fabs(p.t[i]) * wts.length[i];
  return s;
}

void enumerate_ball(const PantsDecomposition& dec, const CombWeights& wts, double L, const DTVisitor& visit) {
  check_ball_args(dec, wts);
  if (!(L > 0.0)) return;
  const auto mask = parity_masks(dec);
  const int N = dec.cuff_count();
  Walker W{wts, mask, slack(L), N};
  DTPoint p{std::vector<std::int64_t>(N, 0), std::vector<std::int64_t>(N, 0)};
  walk(W, 0, L, 0, true, p, visit);
}

std::vector<DTPoint> ball_points(const PantsDecomposition& dec, const CombWeights& wts, double L) {
  std::vector<DTPoint> out;
  enumerate_ball(dec, wts, L, [&](const DTPoint& p) { out.push_back(p); });
  return out;
}

std::uint64_t count_ball(const PantsDecomposition& dec, const CombWeights& wts, double L) {
  check_ball_args(dec, wts);
  if (!(L > 0.0)) return 0;
  const auto mask = parity_masks(dec);
  Walker W{wts, mask, slack(L), dec.cuff_count()};
  // the walk counts the zero point (all m, t zero, parity even) exactly once
  return count_walk(W, 0, L, 0) - 1;
}

}  // namespace mlstat
