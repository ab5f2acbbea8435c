#include "mlstat/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mlstat/errors.hpp"
#include "mlstat/hypfun.hpp"
#include "mlstat/parallel.hpp"

namespace mlstat {

void TorusPoint::validate() const {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("torus point: ell must be positive and finite");
  if (!std::isfinite(tau)) throw DomainError("torus point: tau must be finite");
}

double FrickeTriple::markov_residual() const {
  const double s = x * x + y * y + z * z;
  return std::fabs(s - x * y * z) / s;
}

Slope Slope::make(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw DomainError("slope 0/0");
  if (std::gcd(p, q) != 1) throw DomainError("slope " + std::to_string(p) + "/" + std::to_string(q) + " not reduced");
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

std::string Slope::str() const { return std::to_string(p) + "/" + std::to_string(q); }

std::pair<Matrix2, Matrix2> generator_matrices(const TorusPoint& X) {
  X.validate();
  const double h = 0.5 * X.ell;
  const Matrix2 A{std::exp(h), 0.0, 0.0, std::exp(-h)};
  const double k = 1.0 / std::tanh(h), o = 1.0 / std::sinh(h);
  const Matrix2 B0{k, o, o, k};  // det = coth^2 - csch^2 = 1
  const Matrix2 D{std::exp(-0.5 * X.tau), 0.0, 0.0, std::exp(0.5 * X.tau)};
  return {A, B0 * D};
}

FrickeTriple fn_to_triple(const TorusPoint& X) {
  X.validate();
  const double h = 0.5 * X.ell;
  const double k = 2.0 / std::tanh(h);
  FrickeTriple t{2.0 * std::cosh(h), k * std::cosh(0.5 * X.tau), k * std::cosh(0.5 * (X.tau - X.ell))};
  if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.z))
    throw NumericError("fn_to_triple: overflow at ell = " + std::to_string(X.ell) + ", tau = " + std::to_string(X.tau));
  return t;
}

double trace_to_length(double trace) {
  if (!(trace > 2.0)) throw GeometryError("trace " + std::to_string(trace) + " <= 2 is not hyperbolic");
  return 2.0 * std::acosh(0.5 * trace);
}

namespace {

struct Vec {
  std::int64_t p, q;
  Vec operator+(const Vec& o) const { return {p + o.p, q + o.q}; }
  Vec operator-(const Vec& o) const { return {p - o.p, q - o.q}; }
  bool operator==(const Vec&) const = default;
  Vec normalized() const { return (q < 0 || (q == 0 && p < 0)) ? Vec{-p, -q} : *this; }
};

inline std::int64_t cross(const Vec& a, const Vec& b) { return a.p * b.q - a.q * b.p; }

// Third vertex d of the triangle on the other side of edge (u, v) from c.
inline Vec flip(const Vec& u, const Vec& v, const Vec& c) {
  Vec d = u + v;
  const Vec cn = c.normalized();
  if (d.normalized() == cn) d = u - v;
  return d.normalized();
}

struct Vertex {
  Vec s;
  double t;
};

// Descend to a triangle where no flip lowers the largest trace. From there every
// flip across any edge produces a trace >= both edge endpoints, and that growth
// propagates through the whole subtree.
std::array<Vertex, 3> sink_triangle(const TorusPoint& X) {
  const FrickeTriple f = fn_to_triple(X);
  std::array<Vertex, 3> T{{{{1, 0}, f.x}, {{0, 1}, f.y}, {{1, 1}, f.z}}};
  for (int guard = 0; guard < 100000000; ++guard) {
    std::sort(T.begin(), T.end(), [](const Vertex& a, const Vertex& b) { return a.t < b.t; });
    const double d = T[0].t * T[1].t - T[2].t;
    if (!(d < T[2].t)) return T;
    T[2] = {flip(T[0].s, T[1].s, T[2].s), d};
  }
  throw NumericError("sink descent did not terminate");
}

template <class Emit>
void farey_walk(const TorusPoint& X, double L, Emit&& emit) {
  X.validate();
  if (!(L > 0.0)) return;
  const double T = 2.0 * std::cosh(0.5 * L);
  const auto S = sink_triangle(X);
  for (const auto& v : S) {
    if (v.t <= 2.0) throw GeometryError("non-hyperbolic trace in sink triangle");
    if (v.t <= T) emit(v.s, v.t);
  }
  struct Edge {
    Vertex u, v, c;
  };
  std::vector<Edge> stack{{S[0], S[1], S[2]}, {S[1], S[2], S[0]}, {S[0], S[2], S[1]}};
  while (!stack.empty()) {
    Edge e = stack.back();
    stack.pop_back();
    const double d = e.u.t * e.v.t - e.c.t;
    if (d > T) continue;
    const Vertex nd{flip(e.u.s, e.v.s, e.c.s), d};
    emit(nd.s, d);
    stack.push_back({e.u, nd, e.v});
    stack.push_back({nd, e.v, e.u});
  }
}

double length_of(const TorusPoint& X, const Vec& s, double trace) {
  if (s.p == 1 && s.q == 0) return X.ell;
  return trace_to_length(trace);
}

}  // namespace

double slope_trace(const TorusPoint& X, Slope s) {
  s = Slope::make(s.p, s.q);
  const FrickeTriple f = fn_to_triple(X);
  const Vec target{s.p, s.q};
  if (target == Vec{1, 0}) return f.x;
  if (target == Vec{0, 1}) return f.y;
  // edge (u, v) with the target strictly between them, c on the far side
  Vertex u{{1, 0}, f.x}, v{{0, 1}, f.y}, c{{-1, 1}, f.x * f.y - f.z};
  if (s.p < 0) {
    u = {{-1, 0}, f.x};
    c = {{1, 1}, f.z};
  }
  while (true) {
    const Vec d = u.s + v.s;
    const double td = u.t * v.t - c.t;
    if (d == target) return td;
    const bool toward_u = (cross(d, target) > 0) == (cross(d, u.s) > 0);
    if (toward_u) {
      c = v;
      v = {d, td};
    } else {
      c = u;
      u = {d, td};
    }
  }
}

double slope_length(const TorusPoint& X, Slope s) {
  s = Slope::make(s.p, s.q);
  if (s.p == 1 && s.q == 0) {
    X.validate();
    return X.ell;
  }
  return trace_to_length(slope_trace(X, s));
}

std::vector<SlopeLength> enumerate_short_slopes(const TorusPoint& X, double L) {
  std::vector<SlopeLength> out;
  farey_walk(X, L, [&](const Vec& s, double t) {
    const double len = length_of(X, s, t);
    if (len <= L) out.push_back({Slope{s.p, s.q}, len});
  });
  std::sort(out.begin(), out.end(), [](const SlopeLength& a, const SlopeLength& b) {
    return a.length != b.length ? a.length < b.length : a.slope < b.slope;
  });
  return out;
}

std::vector<double> short_slope_lengths(const TorusPoint& X, double L) {
  std::vector<double> out;
  farey_walk(X, L, [&](const Vec& s, double t) {
    const double len = length_of(X, s, t);
    if (len <= L) out.push_back(len);
  });
  return out;
}

std::uint64_t count_s(std::span<const double> lengths, int k, double L) {
  if (k < 1) throw DomainError("count_s: multiplicity must be >= 1");
  std::uint64_t n = 0;
  for (double l : lengths)
    if (k * l <= L) ++n;
  return n;
}

std::uint64_t count_b(std::span<const double> lengths, double L) {
  std::uint64_t n = 0;
  for (double l : lengths)
    if (l <= L) n += static_cast<std::uint64_t>(std::floor(L / l));
  return n;
}

std::uint64_t count_s(const TorusPoint& X, int k, double L) {
  if (k < 1) throw DomainError("count_s: multiplicity must be >= 1");
  return short_slope_lengths(X, L / k).size();
}

std::uint64_t count_b(const TorusPoint& X, double L) {
  auto l = short_slope_lengths(X, L);
  return count_b(l, L);
}

BEstimate estimate_B(std::span<const double> lengths, double Lmax) {
  if (!(Lmax >= 10.0)) throw DomainError("estimate_B: Lmax must be >= 10");
  std::vector<double> Ls;
  for (double L = Lmax; L >= 5.0; L *= 0.5) Ls.push_back(L);
  std::reverse(Ls.begin(), Ls.end());
  BEstimate b;
  for (double L : Ls) b.ladder.emplace_back(L, static_cast<double>(count_b(lengths, L)) / (L * L));
  b.value = b.ladder.back().second;
  const double prev = b.ladder[b.ladder.size() - 2].second;
  b.rel_change = b.value > 0.0 ? std::fabs(b.value - prev) / b.value : 0.0;
  return b;
}

BEstimate estimate_B(const TorusPoint& X, double Lmax) {
  auto l = short_slope_lengths(X, Lmax);
  return estimate_B(l, Lmax);
}

Systole systole_slope(const TorusPoint& X) {
  const auto S = sink_triangle(X);
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& v : S) lmin = std::min(lmin, length_of(X, v.s, v.t));
  // ties can sit on a neighbouring triangle as well, so enumerate just past the minimum
  const double tol = 1e-9 * std::max(1.0, lmin);
  auto cands = enumerate_short_slopes(X, lmin + tol);
  if (cands.empty()) throw NumericError("systole_slope: enumeration returned nothing");
  Systole sys;
  sys.slope = cands.front().slope;
  sys.length = cands.front().length;
  sys.multiplicity = 0;
  for (const auto& c : cands) {
    if (c.length > sys.length + tol) continue;
    ++sys.multiplicity;
    if (c.slope == Slope{1, 0}) sys.base_is_systole = true;
  }
  return sys;
}

TorusPoint moduli_box_point(const CounterRng& rng, std::uint64_t index, double bers_bound) {
  double u[2];
  rng.uniforms(index, u);
  const double ell = bers_bound * std::sqrt(u[0]);
  return {ell, u[1] * ell};
}

namespace {

// Base curve is a systole: sink triangle check first, enumeration only near ties.
bool base_is_systole(const TorusPoint& X, int& multiplicity) {
  const auto S = sink_triangle(X);
  double len[3], lmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) lmin = std::min(lmin, len[i] = length_of(X, S[i].s, S[i].t));
  const double tol = 1e-9 * std::max(1.0, lmin);
  if (X.ell > lmin + tol) return false;
  multiplicity = 0;
  bool alpha_in_sink = false;
  for (int i = 0; i < 3; ++i) {
    if (len[i] <= lmin + tol) ++multiplicity;
    if (S[i].s == Vec{1, 0}) alpha_in_sink = true;
  }
  if (multiplicity > 1 || !alpha_in_sink) {
    Systole s = systole_slope(X);
    multiplicity = s.multiplicity;
    return s.base_is_systole;
  }
  return true;
}

}  // namespace

MCResult ModuliSamples::result(std::size_t j, std::size_t n) const {
  if (j >= functionals) throw DomainError("ModuliSamples: functional index out of range");
  if (n == 0 || n > count) n = count;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += values[i * functionals + j];
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i * functionals + j] - mean;
    ss += d * d;
  }
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {box_volume * mean, box_volume * std::sqrt(var / static_cast<double>(n)), n, seed};
}

double ModuliSamples::covariance(std::size_t a, std::size_t b, std::size_t n) const {
  if (n == 0 || n > count) n = count;
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += values[i * functionals + a];
    sb += values[i * functionals + b];
  }
  const double ma = sa / n, mb = sb / n;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += (values[i * functionals + a] - ma) * (values[i * functionals + b] - mb);
  return box_volume * box_volume * s / (static_cast<double>(n - 1) * n);
}

ModuliSamples mc_moduli_multi(const TorusVectorFunctional& f, std::size_t functionals, std::size_t samples,
                              std::uint64_t seed, const ModuliOptions& opt) {
  if (samples < 2) throw DomainError("mc_moduli: need at least two samples");
  if (opt.symmetry_factor != 1 && opt.symmetry_factor != 2) throw ConfigError("symmetryFactor must be 1 or 2");
  if (!(opt.bers_bound > 0.0)) throw ConfigError("mc_moduli: bersBound must be positive");
  ModuliSamples out;
  out.count = samples;
  out.functionals = functionals;
  out.box_volume = 0.5 * opt.bers_bound * opt.bers_bound;
  out.seed = seed;
  out.values.assign(samples * functionals, 0.0);
  std::vector<unsigned char> kept(samples, 0);
  CounterRng rng(seed);
  parallel_for(samples, opt.threads, [&](std::size_t i) {
    const TorusPoint X = moduli_box_point(rng, i, opt.bers_bound);
    int mult = 1;
    if (!base_is_systole(X, mult)) return;
    kept[i] = 1;
    std::span<double> row(out.values.data() + i * functionals, functionals);
    f(X, row);
    const double w = 1.0 / (static_cast<double>(mult) * opt.symmetry_factor);
    for (std::size_t j = 0; j < functionals; ++j) {
      if (!std::isfinite(row[j])) {
        std::ostringstream os;
        os.precision(17);
        os << "mc_moduli: non-finite functional value at (ell, tau) = (" << X.ell << ", " << X.tau << ")";
        throw NumericError(os.str());
      }
      row[j] *= w;
    }
  });
  for (auto k : kept) out.kept += k;
  return out;
}

MCResult mc_moduli(const TorusFunctional& f, std::size_t samples, std::uint64_t seed, const ModuliOptions& opt) {
  auto s = mc_moduli_multi([&](const TorusPoint& X, std::span<double> out) { out[0] = f(X); }, 1, samples, seed, opt);
  return s.result(0);
}

std::vector<TorusPoint> sample_fundamental_domain(std::size_t count, std::uint64_t seed, double bers_bound) {
  CounterRng rng(seed, 1);
  std::vector<TorusPoint> out;
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    TorusPoint X = moduli_box_point(rng, i, bers_bound);
    int mult = 1;
    if (base_is_systole(X, mult)) out.push_back(X);
  }
  return out;
}

double comparison_ratio(const TorusPoint& X, double L) {
  const double w = collar_width(X.ell);
  double worst = 1.0;
  farey_walk(X, L, [&](const Vec& s, double t) {
    const double len = length_of(X, s, t);
    if (len > L) return;
    const double lp = static_cast<double>(s.q) * w + std::fabs(static_cast<double>(s.p)) * X.ell;
    worst = std::max({worst, len / lp, lp / len});
  });
  return worst;
}

}  // namespace mlstat
