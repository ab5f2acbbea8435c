#include "mlstat/wp_cells.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mlstat/errors.hpp"
#include "mlstat/hypfun.hpp"
#include "mlstat/parallel.hpp"

namespace mlstat {

void CellSpec::validate() const {
  const int N = surface.cuff_count();
  if (N < 1) throw DomainError("cell: surface has no cuffs");
  if (thin_count < 0 || thin_count > N) throw DomainError("cell: thin count must lie in 0..N");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("cell: epsilon must lie in (0,1)");
  if (!(bers_bound > 1.0)) throw DomainError("cell: bersBound must exceed 1");
  if (!(thin_floor >= 0.0 && thin_floor < epsilon)) throw DomainError("cell: floor must lie in [0, epsilon)");
}

std::string MCResult::to_json() const {
  nlohmann::ordered_json j;
  j["estimate"] = estimate;
  j["stderr"] = std_error;
  j["samples"] = samples;
  j["seed"] = seed;
  return j.dump(2);
}

double thin_f2_factor(double eps, double floor) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("thin_f2_factor: epsilon must lie in (0,1)");
  double v = -1.0 / std::log(eps);
  if (floor > 0.0) v += 1.0 / std::log(floor);
  return v;
}

double thick_factor(double eps, double bers_bound) { return 0.5 * (bers_bound * bers_bound - eps * eps); }

double cell_volume(const CellSpec& spec) {
  spec.validate();
  const int N = spec.surface.cuff_count(), k = spec.thin_count;
  const double thin = 0.5 * (spec.epsilon * spec.epsilon - spec.thin_floor * spec.thin_floor);
  return std::pow(thin, k) * std::pow(thick_factor(spec.epsilon, spec.bers_bound), N - k);
}

double f2_cell_integral(const CellSpec& spec) {
  spec.validate();
  const int N = spec.surface.cuff_count(), k = spec.thin_count;
  return std::pow(thin_f2_factor(spec.epsilon, spec.thin_floor), k) *
         std::pow(thick_factor(spec.epsilon, spec.bers_bound), N - k);
}

Sampling parse_sampling(std::string_view s) {
  if (s == "wp") return Sampling::WeilPetersson;
  if (s == "cusp") return Sampling::CuspAdapted;
  throw ConfigError("unknown sampling mode '" + std::string(s) + "' (expected wp or cusp)");
}

std::string to_string(Sampling s) { return s == Sampling::WeilPetersson ? "wp" : "cusp"; }

CellSample draw_cell_sample(const CellSpec& spec, Sampling mode, const CounterRng& rng, std::uint64_t index) {
  const int N = spec.surface.cuff_count();
  std::vector<double> u(2 * N);
  rng.uniforms(index, u);
  CellSample cs;
  cs.fn.lengths.resize(N);
  cs.fn.twists.resize(N);
  cs.log_lengths.resize(N);
  const double e2 = spec.epsilon * spec.epsilon, f2 = spec.thin_floor * spec.thin_floor;
  const double L2 = spec.bers_bound * spec.bers_bound;
  for (int i = 0; i < N; ++i) {
    const bool thin = i < spec.thin_count;
    double ell, logl;
    if (thin && mode == Sampling::CuspAdapted) {
      // s = 1/|log l| uniform on (s_lo, s_hi]: F^2 dl dtau becomes ds
      const double s_hi = -1.0 / std::log(spec.epsilon);
      const double s_lo = spec.thin_floor > 0.0 ? -1.0 / std::log(spec.thin_floor) : 0.0;
      const double s = s_lo + u[2 * i] * (s_hi - s_lo);
      logl = -1.0 / s;
      ell = std::exp(logl);
      cs.log_weight += 2.0 * logl + std::log(s_hi - s_lo) - 2.0 * std::log(s);
    } else {
      const double lo2 = thin ? f2 : e2, hi2 = thin ? e2 : L2;
      ell = std::sqrt(lo2 + u[2 * i] * (hi2 - lo2));
      logl = std::log(ell);
      cs.log_weight += std::log(0.5 * (hi2 - lo2));
    }
    cs.fn.lengths[i] = ell;
    cs.log_lengths[i] = logl;
    cs.fn.twists[i] = u[2 * i + 1] * ell;
  }
  return cs;
}

std::vector<FNPoint> sample_cell(const CellSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  CounterRng rng(seed);
  std::vector<FNPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(draw_cell_sample(spec, Sampling::WeilPetersson, rng, i).fn);
  return out;
}

namespace {

std::string describe(const CellSample& cs) {
  std::ostringstream os;
  os.precision(17);
  os << "(l, tau) =";
  for (std::size_t i = 0; i < cs.fn.size(); ++i)
    os << " (" << cs.fn.lengths[i] << " [log " << cs.log_lengths[i] << "], " << cs.fn.twists[i] << ")";
  return os.str();
}

template <class Eval>
MCResult integrate(const CellSpec& spec, std::size_t count, std::uint64_t seed, Sampling mode, unsigned threads,
                   Eval&& eval) {
  spec.validate();
  if (count == 0) throw DomainError("mc_integrate: need at least one sample");
  CounterRng rng(seed);
  std::vector<double> vals(count);
  parallel_for(count, threads, [&](std::size_t i) {
    CellSample cs = draw_cell_sample(spec, mode, rng, i);
    double v = eval(cs);
    if (!std::isfinite(v)) throw NumericError("mc_integrate: non-finite functional value at sample " +
                                              std::to_string(i) + ", " + describe(cs));
    vals[i] = v;
  });
  // two-pass moments, in index order
  double sum = 0.0;
  for (double v : vals) sum += v;
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  const double var = count > 1 ? ss / static_cast<double>(count - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(count)), count, seed};
}

}  // namespace

MCResult mc_integrate(const Functional& f, const CellSpec& spec, std::size_t count, std::uint64_t seed, Sampling mode,
                      unsigned threads) {
  return integrate(spec, count, seed, mode, threads,
                   [&](const CellSample& cs) { return f(cs.fn) * std::exp(cs.log_weight); });
}

MCResult mc_integrate_log(const LogFunctional& logf, const CellSpec& spec, std::size_t count, std::uint64_t seed,
                          Sampling mode, unsigned threads) {
  return integrate(spec, count, seed, mode, threads, [&](const CellSample& cs) {
    const double lf = logf(cs);
    if (lf == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(lf + cs.log_weight);
  });
}

namespace {

// log w(l) from log l; w(l) = asinh(1/sinh(l/2)) ~ log 4 - log l as l -> 0
double log_collar_width(double logl) {
  if (logl < -30.0) return std::log(std::log(4.0) - logl);
  return std::log(collar_width(std::exp(logl)));
}

}  // namespace

LogFunctional log_f_power(double p, double eps) {
  return [p, eps](const CellSample& cs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < cs.log_lengths.size(); ++i) {
      const double ll = cs.log_lengths[i];
      if (cs.fn.lengths[i] <= eps) acc -= p * (ll + std::log(-ll));  // log R = -log l - log|log l|
    }
    return acc;
  };
}

LogFunctional log_b_comb(const SurfaceType& s) {
  const int N = s.cuff_count();
  const double head = (s.genus - N) * std::numbers::ln2 + N * std::numbers::ln2 - std::lgamma(2.0 * N + 1.0);
  return [head](const CellSample& cs) {
    double acc = head;
    for (double ll : cs.log_lengths) acc -= ll + log_collar_width(ll);
    return acc;
  };
}

LogFunctional named_functional(std::string_view name, const SurfaceType& s, double eps) {
  if (name == "one") return [](const CellSample&) { return 0.0; };
  if (name == "F2") return log_f_power(2.0, eps);
  if (name == "B-comb") return log_b_comb(s);
  if (name.substr(0, 3) == "Fp:") {
    double delta = 0.0;
    try {
      delta = std::stod(std::string(name.substr(3)));
    } catch (const std::exception&) {
      throw ConfigError("bad functional '" + std::string(name) + "'");
    }
    return log_f_power(2.0 + delta, eps);
  }
  throw ConfigError("unknown functional '" + std::string(name) + "' (one, F2, Fp:<delta>, B-comb)");
}

std::vector<FNPoint> sample_pants_gluing(const SurfaceType& s, double L, std::size_t count, std::uint64_t seed) {
  if (!(L > 0.0)) throw DomainError("sample_pants_gluing: L must be positive");
  const int N = s.cuff_count();
  if (N < 1) throw DomainError("sample_pants_gluing: surface has no cuffs");
  CounterRng rng(seed);
  std::vector<FNPoint> out;
  out.reserve(count);
  std::vector<double> u(2 * N + 1), e(N + 1);
  for (std::size_t i = 0; i < count; ++i) {
    rng.uniforms(i, u);
    // uniform on the simplex: normalized exponentials, the extra one is the slack
    double total = 0.0;
    for (int j = 0; j <= N; ++j) total += e[j] = -std::log(u[j]);
    FNPoint p;
    p.lengths.resize(N);
    p.twists.resize(N);
    for (int j = 0; j < N; ++j) {
      p.lengths[j] = L * e[j] / total;
      p.twists[j] = u[N + 1 + j] * p.lengths[j];
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mlstat
