#include "mlstat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mlstat/errors.hpp"
#include "mlstat/hypfun.hpp"
#include "mlstat/thurston.hpp"
#include "mlstat/wp_cells.hpp"

namespace mlstat {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

CheckLine make_line(int c, std::string name, std::string anchor, std::string measured, std::string tol, bool pass) {
  return {c, std::move(name), std::move(anchor), std::move(measured), std::move(tol), pass};
}

// the 1e-9 relative floor covers summation rounding of zero-variance estimators
bool within_sigma(const MCResult& r, double exact, double k = 3.0) {
  return std::fabs(r.estimate - exact) <= k * r.std_error + 1e-9 * std::fabs(exact);
}

std::string mc_str(const MCResult& r) { return num(r.estimate) + " +- " + num(r.std_error); }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// l log-uniform on [lo, hi], tau uniform on [0, l)
std::vector<TorusPoint> thin_points(std::size_t n, std::uint64_t seed, double lo, double hi) {
  CounterRng rng(seed, 7);
  std::vector<TorusPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = lo * std::pow(hi / lo, rng.uniform(i, 0));
    out.push_back({l, rng.uniform(i, 1) * l});
  }
  return out;
}

double f_of(const TorusPoint& X, double eps) { return f_value(FNPoint({X.ell}, {X.tau}), eps); }

// int_floor^eps dl / (l log^2 l), in u = -log l
double thin_f2_oracle(double eps, double floor) {
  auto g = [](double u) { return 1.0 / (u * u); };
  if (floor <= 0.0) return boost::math::quadrature::exp_sinh<double>().integrate(g, -std::log(eps), INFINITY);
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -std::log(eps), -std::log(floor), 15, 1e-14);
}

// int_floor^eps l R(l)^p dl = int e^{(p-2)u} u^{-p} du
double thin_fp_oracle(double p, double eps, double floor) {
  auto g = [p](double u) { return std::exp((p - 2.0) * u) * std::pow(u, -p); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -std::log(eps), -std::log(floor), 15, 1e-14);
}

double thick_oracle(double eps, double L) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate([](double l) { return l; }, eps, L);
}

Rational config_kappa(const RunConfig& cfg) {
  auto it = cfg.kappa.find("S11/nonsep");
  if (it == cfg.kappa.end()) throw ConfigError("kappa for S11/nonsep is not configured");
  const std::int64_t one = 1;
  auto k = it->second.find(std::span<const std::int64_t>(&one, 1));
  if (!k) throw ConfigError("kappa for S11/nonsep has no odd-weight value");
  return *k;
}

// sup over L of count_s(X, 1, L) / L^2 on the enumerated range
double spectrum_constant(std::vector<double> lens) {
  std::sort(lens.begin(), lens.end());
  double c = 0.0;
  for (std::size_t i = 0; i < lens.size(); ++i) c = std::max(c, static_cast<double>(i + 1) / (lens[i] * lens[i]));
  return c;
}

}  // namespace

struct Verifier::MainRun {
  ModuliSamples samples;
  std::size_t half = 0;
  double lmax = 0.0, lhalf = 0.0, ljoint = 0.0, lheld = 0.0;
};

bool VerifyReport::criterion_passed(int c) const {
  bool any = false;
  for (const auto& l : lines) {
    if (l.criterion != c) continue;
    any = true;
    if (!l.pass) return false;
  }
  return any;
}

bool VerifyReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [&](int c) { return criterion_passed(c); });
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  os << "mlstat verify report\nconfig:\n" << config_json << "\n\n";
  std::size_t ok = 0;
  for (const auto& l : lines) {
    ok += l.pass;
    os << (l.pass ? "[PASS] " : "[FAIL] ") << l.criterion << ' ' << l.name << " | " << l.anchor << " | "
       << l.measured << " | " << l.tolerance << '\n';
  }
  os << '\n';
  std::size_t cok = 0;
  for (int c : criteria) {
    const bool p = criterion_passed(c);
    cok += p;
    os << "criterion " << c << ' ' << (p ? "PASS" : "FAIL") << "  " << criterion_title(c) << '\n';
  }
  os << "summary: " << cok << '/' << criteria.size() << " criteria passed, " << ok << '/' << lines.size()
     << " checks passed\n";
  return os.str();
}

std::string criterion_title(int c) {
  switch (c) {
    case 1: return "Thurston closed form vs lattice count";
    case 2: return "exact cell integrals";
    case 3: return "square integrability witness pair";
    case 4: return "sandwich bounds";
    case 5: return "counting asymptotics";
    case 6: return "uniform counting bound";
    case 7: return "frequency machinery exactness";
    case 8: return "moduli consistency chain on S11";
    case 9: return "determinism";
    default: return "unknown";
  }
}

Verifier::Verifier(RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  table_ = cfg_.load_volume_table();
}

Verifier::~Verifier() = default;

VerifyReport Verifier::run() {
  VerifyReport r;
  r.config_json = cfg_.to_json();
  r.criteria = cfg_.checks;
  for (int c : cfg_.checks) {
    auto lines = run_check(c);
    r.lines.insert(r.lines.end(), lines.begin(), lines.end());
  }
  return r;
}

std::vector<CheckLine> Verifier::run_check(int c) {
  switch (c) {
    case 1: return check_lattice();
    case 2: return check_cells();
    case 3: return check_square_integrability();
    case 4: return check_sandwich();
    case 5: return check_asymptotics();
    case 6: return check_uniform_bound();
    case 7: return check_frequencies();
    case 8: return check_moduli();
    case 9: return check_determinism();
    default: throw ConfigError("no check " + std::to_string(c));
  }
}

std::vector<TorusPoint> Verifier::calibration_points() {
  const auto& b = cfg_.budgets;
  const double eps = cfg_.constants.epsilon;
  auto pts = sample_fundamental_domain(b.calibration_points, cfg_.seeds.calibration, kTorusBersBound);
  for (double l : {eps * (1.0 - 1e-9), eps * (1.0 + 1e-9)})
    for (double f : {0.0, 0.25, 0.5, 0.75}) pts.push_back({l, f * l});
  auto thin = thin_points(std::max<std::size_t>(b.calibration_points / 5, 1), cfg_.seeds.calibration, 5e-4, eps);
  pts.insert(pts.end(), thin.begin(), thin.end());
  return pts;
}

std::vector<TorusPoint> Verifier::sandwich_test_points() {
  const auto& b = cfg_.budgets;
  auto pts = sample_fundamental_domain(b.sandwich_points, cfg_.seeds.test, kTorusBersBound);
  auto thin = thin_points(b.sandwich_thin_points, cfg_.seeds.test, 1e-3, 1e-1);
  pts.insert(pts.end(), thin.begin(), thin.end());
  return pts;
}

double Verifier::calibrate_comparison_c() {
  if (auto it = cache_.find("C"); it != cache_.end()) return it->second;
  double worst = 1.0;
  for (const auto& X : calibration_points()) worst = std::max(worst, comparison_ratio(X, cfg_.budgets.moduli_lmax));
  return cache_["C"] = 1.05 * worst;
}

SandwichConstants Verifier::calibrate_sandwich() {
  if (auto it = cache_.find("C1"); it != cache_.end()) return {it->second, cache_.at("C2")};
  std::vector<double> ratios;
  for (const auto& X : calibration_points())
    ratios.push_back(estimate_B(X, cfg_.budgets.moduli_lmax).value / f_of(X, cfg_.constants.epsilon));
  auto s = mlstat::calibrate_sandwich(ratios, 1.1);
  cache_["C1"] = s.c1;
  cache_["C2"] = s.c2;
  return s;
}

const Calibration& Verifier::moduli_calibration() {
  if (calib_) return *calib_;
  auto cal = std::make_unique<Calibration>();
  const auto& b = cfg_.budgets;
  const double L = b.moduli_lmax / 2.0;
  const ModuliOptions opt{kTorusBersBound, 1, cfg_.threads};
  auto ms = mc_moduli_multi(
      [L](const TorusPoint& X, std::span<double> out) {
        const auto lens = short_slope_lengths(X, L);
        out[0] = 1.0;
        out[1] = static_cast<double>(count_s(lens, 1, L / 2.0));
        out[2] = static_cast<double>(count_s(lens, 1, L));
        out[3] = static_cast<double>(count_s(lens, 2, L));
      },
      4, b.symmetry_samples, cfg_.seeds.calibration, opt);
  const double v0 = table_.moduli_volume(1, 1).to_double();
  cal->symmetry_ratio = ms.result(0).estimate / v0;
  cal->symmetry_factor = std::fabs(cal->symmetry_ratio - 1.0) <= std::fabs(cal->symmetry_ratio - 2.0) ? 1 : 2;
  const double sf = cal->symmetry_factor;
  auto oracle = [&](std::size_t j) {
    return [&ms, j, sf](double) {
      MCResult r = ms.result(j);
      r.estimate /= sf;
      r.std_error /= sf;
      return r;
    };
  };
  const CutData cut = builtin_cut("S11/nonsep");
  const Rational one[] = {Rational(1)}, two[] = {Rational(2)};
  cal->kappa = calibrate_kappa(cut, one, table_, oracle(2), L);
  cal->kappa_half = calibrate_kappa(cut, one, table_, oracle(1), L / 2.0);
  cal->kappa_double = calibrate_kappa(cut, two, table_, oracle(3), L);
  calib_ = std::move(cal);
  return *calib_;
}

const Verifier::MainRun& Verifier::main_run() {
  if (main_) return *main_;
  auto run = std::make_unique<MainRun>();
  const auto& b = cfg_.budgets;
  run->lmax = b.moduli_lmax;
  run->lhalf = b.moduli_lmax / 2.0;
  run->ljoint = 0.75 * b.moduli_lmax;
  run->lheld = 0.375 * b.moduli_lmax;
  run->half = b.moduli_samples;
  const double L = run->lmax, Lh = run->lhalf, Lj = run->ljoint, Lk = run->lheld;
  ModuliOptions opt{kTorusBersBound, cfg_.symmetry_factor, cfg_.threads};
  run->samples = mc_moduli_multi(
      [=](const TorusPoint& X, std::span<double> out) {
        const auto lens = short_slope_lengths(X, L);
        const double B = static_cast<double>(count_b(lens, L)) / (L * L);
        const double sj = static_cast<double>(count_s(lens, 1, Lj));
        const double sj2 = static_cast<double>(count_s(lens, 2, Lj));
        out[0] = 1.0;
        out[1] = B;
        out[2] = static_cast<double>(count_b(lens, Lh)) / (Lh * Lh);
        out[3] = B * B;
        out[4] = static_cast<double>(count_s(lens, 1, Lk)) / (Lk * Lk);
        out[5] = sj * sj2 / std::pow(Lj, 4);
        out[6] = sj * sj / std::pow(Lj, 4);
      },
      7, 2 * b.moduli_samples, cfg_.seeds.test, opt);
  main_ = std::move(run);
  return *main_;
}

std::vector<CheckLine> Verifier::check_lattice() {
  std::vector<CheckLine> out;
  const double L = cfg_.budgets.lattice_L;
  for (const char* name : {"S11", "S04"}) {
    const PantsDecomposition dec = builtin_surface(name);
    for (double l : {0.0, 0.5, 1.76275}) {
      const CombWeights wts = l == 0.0 ? CombWeights({1.0}, {1.0}) : CombWeights({collar_width(l)}, {l});
      const double ladder[] = {L / 8.0, L / 4.0, L / 2.0, L};
      const ConvergenceFit fit = fit_convergence(dec, wts, ladder);
      const double err = std::fabs(fit.ladder.back().rel_error);
      const std::string w = l == 0.0 ? "(1,1)" : "(w(" + num(l) + ")," + num(l) + ")";
      out.push_back(make_line(1, std::string(name) + " weights " + w,
                              "#(Lambda cap L*ball)/L^2N -> 2^(g-N) 2^N/(2N)! prod 1/(w_i l_i)",
                              "closed " + num(fit.closed_form) + ", lattice " + num(fit.ladder.back().estimate) +
                                  ", rel err " + num(err) + " at L=" + num(L) + ", log-log slope " + num(fit.slope),
                              "rel err <= 0.02", err <= 0.02));
    }
  }
  return out;
}

std::vector<CheckLine> Verifier::check_cells() {
  std::vector<CheckLine> out;
  const double eps = cfg_.constants.epsilon, Lb = kTorusBersBound;
  const double thin = thin_f2_factor(eps), thin_q = thin_f2_oracle(eps, 0.0);
  const double ln = 1.0 / std::log(1.0 / eps);
  out.push_back(make_line(2, "thin factor", "int_0^eps int_0^l R(l)^2 dtau dl = -1/log(eps)",
                          num(thin) + " vs 1/|log eps| " + num(ln) + ", quadrature " + num(thin_q),
                          "abs 1e-9", std::fabs(thin - ln) <= 1e-9 && std::fabs(thin - thin_q) <= 1e-9));
  const double thick = thick_factor(eps, Lb), thick_q = thick_oracle(eps, Lb);
  const double thick_e = 0.5 * (Lb * Lb - eps * eps);
  out.push_back(make_line(2, "thick factor", "int_eps^L int_0^l dtau dl = (L^2 - eps^2)/2",
                          num(thick) + " vs " + num(thick_e) + ", quadrature " + num(thick_q), "abs 1e-9",
                          std::fabs(thick - thick_e) <= 1e-9 && std::fabs(thick - thick_q) <= 1e-9));
  const SurfaceType s11(1, 1);
  const std::size_t n = cfg_.budgets.cell_samples;
  for (int k = 0; k <= 1; ++k) {
    const CellSpec spec{s11, k, eps, Lb, 0.0};
    const double vol = cell_volume(spec);
    auto one = mc_integrate_log(named_functional("one", s11, eps), spec, n, cfg_.seeds.test + 20 + k,
                                Sampling::WeilPetersson, cfg_.threads);
    out.push_back(make_line(2, "S11 k=" + std::to_string(k) + " volume MC", "E[1] over the cell = cell volume",
                            mc_str(one) + " vs " + num(vol), "3 sigma", within_sigma(one, vol)));
    const double f2 = f2_cell_integral(spec);
    const Sampling mode = k == 0 ? Sampling::WeilPetersson : Sampling::CuspAdapted;
    auto mc = mc_integrate_log(named_functional("F2", s11, eps), spec, n, cfg_.seeds.test + 22 + k, mode,
                               cfg_.threads);
    out.push_back(make_line(2, "S11 k=" + std::to_string(k) + " F^2 MC (" + to_string(mode) + ")",
                            "int_cell F^2 = (-1/log eps)^k ((L^2-eps^2)/2)^(N-k)", mc_str(mc) + " vs " + num(f2),
                            "3 sigma", within_sigma(mc, f2)));
  }
  return out;
}

std::vector<CheckLine> Verifier::check_square_integrability() {
  std::vector<CheckLine> out;
  const double eps = cfg_.constants.epsilon, Lb = kTorusBersBound;
  const SurfaceType s11(1, 1);
  const std::size_t n = cfg_.budgets.cell_samples;
  for (int k = 0; k <= 1; ++k) {
    const CellSpec spec{s11, k, eps, Lb, 0.0};
    const double exact = k == 0 ? thick_oracle(eps, Lb) : thin_f2_oracle(eps, 0.0);
    const Sampling mode = k == 0 ? Sampling::WeilPetersson : Sampling::CuspAdapted;
    auto mc = mc_integrate_log(log_f_power(2.0, eps), spec, n, cfg_.seeds.test + 30 + k, mode, cfg_.threads);
    out.push_back(make_line(3, "F^2 on S11 cell k=" + std::to_string(k), "int_cell F^2 < infinity",
                            mc_str(mc) + " vs quadrature " + num(exact), "finite, 3 sigma",
                            std::isfinite(mc.estimate) && within_sigma(mc, exact)));
  }
  const double floors[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::vector<MCResult> f2, f25;
  std::uint64_t seed = cfg_.seeds.test + 40;
  for (double fl : floors) {
    const CellSpec spec{s11, 1, eps, Lb, fl};
    f2.push_back(mc_integrate_log(log_f_power(2.0, eps), spec, n, seed++, Sampling::CuspAdapted, cfg_.threads));
    f25.push_back(mc_integrate_log(log_f_power(2.5, eps), spec, n, seed++, Sampling::CuspAdapted, cfg_.threads));
  }
  bool f2_ok = true, f25_ok = true;
  std::string f2_s, f25_s;
  for (std::size_t i = 0; i < std::size(floors); ++i) {
    f2_ok = f2_ok && within_sigma(f2[i], thin_f2_oracle(eps, floors[i])) && f2[i].estimate <= thin_f2_factor(eps) * (1.0 + 1e-9);
    f25_ok = f25_ok && within_sigma(f25[i], thin_fp_oracle(2.5, eps, floors[i]));
    f2_s += (i ? ", " : "") + num(f2[i].estimate);
    f25_s += (i ? ", " : "") + num(f25[i].estimate);
  }
  out.push_back(make_line(3, "F^2 floored thin cell, floors 1e-2..1e-6", "int_floor^eps F^2 <= -1/log eps, bounded",
                          f2_s + " (limit " + num(thin_f2_factor(eps)) + ")", "3 sigma of quadrature, <= limit",
                          f2_ok));
  out.push_back(make_line(3, "F^2.5 floored thin cell vs quadrature", "int_floor^eps l R(l)^2.5 dl", f25_s,
                          "3 sigma of quadrature", f25_ok));
  bool increasing = true, accelerating = true;
  double prev_inc = 0.0;
  for (std::size_t i = 1; i < f25.size(); ++i) {
    const double inc = f25[i].estimate - f25[i - 1].estimate;
    const double sig = std::hypot(f25[i].std_error, f25[i - 1].std_error);
    increasing = increasing && inc > 3.0 * sig;
    if (i > 1) accelerating = accelerating && inc - prev_inc > 3.0 * std::hypot(sig, f25[i - 2].std_error);
    prev_inc = inc;
  }
  out.push_back(make_line(3, "F^2.5 floored sequence increases",
                          "int_floor^eps F^2.5 ~ floor^(-1/2) |log floor|^(-5/2) -> infinity",
                          "last/first " + num(f25.back().estimate / f25.front().estimate),
                          "each step > 3 sigma, steps growing by > 3 sigma", increasing && accelerating));
  return out;
}

std::vector<CheckLine> Verifier::check_sandwich() {
  std::vector<CheckLine> out;
  const SandwichConstants fresh = calibrate_sandwich();
  const SandwichConstants& frozen = cfg_.sandwich;
  const bool match = frozen.calibrated() && std::fabs(frozen.c1 - fresh.c1) <= 1e-9 * fresh.c1 &&
                     std::fabs(frozen.c2 - fresh.c2) <= 1e-9 * fresh.c2;
  out.push_back(make_line(4, "frozen C1, C2 equal fresh calibration", "C1 = min B/F / 1.1, C2 = max B/F * 1.1",
                          "frozen (" + num(frozen.c1) + ", " + num(frozen.c2) + ") fresh (" + num(fresh.c1) + ", " +
                              num(fresh.c2) + ")",
                          "rel 1e-9", match));
  const auto pts = sandwich_test_points();
  std::size_t viol = 0, thin = 0;
  double lo = INFINITY, hi = 0.0;
  for (const auto& X : pts) {
    const double F = f_of(X, cfg_.constants.epsilon);
    const double B = estimate_B(X, cfg_.budgets.moduli_lmax).value;
    lo = std::min(lo, B / F);
    hi = std::max(hi, B / F);
    thin += X.ell <= 0.1 && X.ell >= 1e-3 ? 1 : 0;
    if (!(frozen.c1 * F <= B && B <= frozen.c2 * F)) ++viol;
  }
  out.push_back(make_line(4, "C1 F <= B <= C2 F on " + std::to_string(pts.size()) + " points (" +
                                 std::to_string(thin) + " with l in [1e-3, 1e-1])",
                          "C1 prod R(l_thin) <= B(X) <= C2 prod R(l_thin)",
                          std::to_string(viol) + " violations, B/F in [" + num(lo) + ", " + num(hi) + "]",
                          "0 violations", viol == 0));
  return out;
}

std::vector<CheckLine> Verifier::check_asymptotics() {
  const MainRun& run = main_run();
  const double L = run.lmax;
  const double b = run.samples.result(1).estimate;
  const double c = to_double(config_kappa(cfg_)) / 2.0;
  const auto pts = sample_fundamental_domain(cfg_.budgets.asymptotic_points, cfg_.seeds.test + 5, kTorusBersBound);
  double worst = 0.0;
  std::string ratios;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto lens = short_slope_lengths(pts[i], L);
    const double s = static_cast<double>(count_s(lens, 1, L)) / (L * L);
    const double B = static_cast<double>(count_b(lens, L)) / (L * L);
    const double r = s * b / (c * B);
    worst = std::max(worst, std::fabs(r - 1.0));
    ratios += (i ? " " : "") + num(r);
  }
  return {make_line(5, std::to_string(pts.size()) + " points at L=" + num(L),
                    "s(X,gamma,L)/L^2 -> c(gamma) B(X) / b_{1,1}",
                    "ratios " + ratios + "; max |r-1| " + num(worst), "|r-1| <= 0.1", worst <= 0.1)};
}

std::vector<CheckLine> Verifier::check_uniform_bound() {
  std::vector<CheckLine> out;
  const double fresh = calibrate_comparison_c();
  const Constants& c = cfg_.constants;
  out.push_back(make_line(6, "frozen comparison C equals fresh calibration",
                          "C = 1.05 max over slopes of max(l/L_P, L_P/l)",
                          "frozen " + num(c.comparison_c) + " fresh " + num(fresh), "rel 1e-9",
                          std::fabs(c.comparison_c - fresh) <= 1e-9 * fresh));
  const double Ls[] = {20.0, 40.0, 80.0};
  const double L0 = count_threshold(c);
  out.push_back(make_line(6, "bound range", "L >= L_0 = bersBound / C", "L_0 " + num(L0), "L_0 <= 20", L0 <= 20.0));
  const std::size_t n = cfg_.budgets.uniform_points;
  auto pts = sample_fundamental_domain(n - n / 5, cfg_.seeds.test + 6, kTorusBersBound);
  auto thin = thin_points(n / 5, cfg_.seeds.test + 6, 1e-3, 1e-1);
  pts.insert(pts.end(), thin.begin(), thin.end());
  const SurfaceType s11(1, 1);
  std::size_t viol = 0, spectral_viol = 0, tests = 0;
  double worst = 0.0, spectral_worst = 0.0;
  for (const auto& X : pts) {
    const auto lens = short_slope_lengths(X, 80.0);
    const double C = spectrum_constant(lens);
    const FNPoint fn({X.ell}, {X.tau});
    for (double L : Ls) {
      const double up = count_upper(s11, fn, L, c);
      for (int k = 1; k <= 10; ++k) {
        const double v = static_cast<double>(count_s(lens, k, L)) / (L * L);
        ++tests;
        worst = std::max(worst, v / up);
        spectral_worst = std::max(spectral_worst, v * k * k / C);
        viol += v <= up ? 0 : 1;
        spectral_viol += v <= C / (k * k) * (1.0 + 1e-12) ? 0 : 1;
      }
    }
  }
  out.push_back(make_line(6, std::to_string(pts.size()) + " points, k<=10, L in {20,40,80}",
                          "s(X,k gamma,L)/L^2 <= (3g-2+n)^N 8^N C^2N 2^k M^(N-k) prod R",
                          std::to_string(viol) + "/" + std::to_string(tests) + " violations, max lhs/bound " +
                              num(worst),
                          "0 violations", viol == 0));
  out.push_back(make_line(6, "scaling in k", "s(X,k gamma,L)/L^2 <= C(X)/k^2, C(X) = sup_L s(X,gamma,L)/L^2",
                          std::to_string(spectral_viol) + "/" + std::to_string(tests) + " violations, max ratio " +
                              num(spectral_worst),
                          "0 violations", spectral_viol == 0));
  return out;
}

std::vector<CheckLine> Verifier::check_frequencies() {
  std::vector<CheckLine> out;
  const Rational kappa = config_kappa(cfg_);
  const CutData cut = builtin_cut("S11/nonsep");
  bool poly_ok = true;
  std::string shown;
  for (int q = 1; q <= 5; ++q) {
    const Rational a[] = {Rational(q)};
    LPolynomial P = count_polynomial(cut, a, kappa, table_);
    LPolynomial expect;
    expect.add(2, PiNumber(Rational(kappa / (2 * q * q))));
    poly_ok = poly_ok && P == expect;
    if (q <= 2) shown += (q > 1 ? "; " : "") + std::string("q=") + std::to_string(q) + ": " + P.str();
  }
  out.push_back(make_line(7, "P(L, q gamma) on S11, q=1..5", "P(L, q gamma) = kappa L^2 / (2 q^2)", shown,
                          "exact", poly_ok));
  const SurfaceType s11(1, 1);
  std::vector<MulticurveType> types = cfg_.multicurve_types("S11");
  const int cap = cfg_.budgets.frequency_cap;
  FrequencySum fs = b_from_frequencies(s11, table_, types, cap);
  const PiNumber closed_expect = PiNumber::pi2_power(1, kappa / 12);
  const bool closed_ok = fs.closed_form && *fs.closed_form == closed_expect;
  out.push_back(make_line(7, "closed form of sum_q c(q gamma)", "sum_q kappa/(2q^2) = kappa pi^2/12",
                          fs.closed_form ? fs.closed_form->str() : std::string("none"),
                          "exact " + closed_expect.str(), closed_ok));
  const double gap = fs.closed_form ? fs.closed_form->to_double() - fs.partial_value : INFINITY;
  const double tail_cap = to_double(kappa) / (2.0 * cap);
  out.push_back(make_line(7, "partial sum to cap " + std::to_string(cap),
                          "0 <= closed - partial <= tail bound <= kappa/(2 cap)",
                          "gap " + num(gap) + ", tail bound " + num(fs.tail_bound),
                          "tail bound <= " + num(tail_cap),
                          gap >= 0.0 && gap <= fs.tail_bound * (1.0 + 1e-12) && fs.tail_bound <= tail_cap * (1.0 + 1e-12)));
  // pair-sum identity, exact in Q[pi^2]; a is kept generic
  const PiFraction a(PiNumber::pi2_power(2, Rational(1, 45)) + PiNumber(Rational(1, 7)));
  const PiFraction b(closed_expect);
  const int pcap = std::min(cap, 24);
  PiFraction pair_sum, partial;
  std::vector<PiFraction> cs;
  for (int q = 1; q <= pcap; ++q) cs.emplace_back(PiNumber(Rational(kappa / (2 * q * q))));
  for (const auto& c : cs) partial += c;
  for (const auto& c1 : cs)
    for (const auto& c2 : cs) pair_sum += joint_frequency(c1, c2, a, b);
  const bool pair_ok = pair_sum == a / (b * b) * partial * partial;
  const PiFraction full = joint_frequency(b, b, a, b);
  out.push_back(make_line(7, "joint-frequency pair sum",
                          "sum_{g1,g2} c(g1,g2) = (a/b^2) (sum c)^2 = a",
                          "finite pairs q<=" + std::to_string(pcap) + ": " + (pair_ok ? "equal" : "differ") +
                              "; full series: " + full.str(),
                          "exact, a = " + a.str(), pair_ok && full == a));
  return out;
}

std::vector<CheckLine> Verifier::check_moduli() {
  std::vector<CheckLine> out;
  const Calibration& cal = moduli_calibration();
  const MainRun& run = main_run();
  const auto& S = run.samples;
  const double v0 = table_.moduli_volume(1, 1).to_double();
  out.push_back(make_line(8, "symmetryFactor calibration", "m_{1,1} estimate / symmetryFactor = V_{1,1}(0)",
                          "ratio at factor 1: " + num(cal.symmetry_ratio) + ", calibrated " +
                              std::to_string(cal.symmetry_factor) + ", frozen " +
                              std::to_string(cfg_.symmetry_factor),
                          "frozen = calibrated", cal.symmetry_factor == cfg_.symmetry_factor));
  const MCResult m = S.result(0);
  out.push_back(make_line(8, "(i) m_{1,1}", "int 1 dmu_wp = V_{1,1}(0) = " + table_.moduli_volume(1, 1).str(),
                          mc_str(m) + " vs " + num(v0), "3 sigma", within_sigma(m, v0)));

  const Rational kappa = config_kappa(cfg_);
  const double kd = to_double(kappa);
  const bool rational_ok = cal.kappa.rational && *cal.kappa.rational == kappa;
  out.push_back(make_line(8, "(ii) kappa calibration at L=" + num(cal.kappa.L),
                          "int s(X,gamma,L) dmu_wp = kappa L^2/2",
                          num(cal.kappa.value) + " +- " + num(cal.kappa.std_error) + " -> " +
                              (cal.kappa.rational ? to_string(*cal.kappa.rational) : std::string("none")) +
                              ", frozen " + to_string(kappa),
                          "rounds to frozen kappa", rational_ok));
  const double stab = std::fabs(cal.kappa_half.value / cal.kappa.value - 1.0);
  out.push_back(make_line(8, "(ii) kappa stability L vs 2L", "kappa(L) = kappa(2L)",
                          num(cal.kappa_half.value) + " vs " + num(cal.kappa.value), "rel 0.05", stab <= 0.05));
  const double par = std::fabs(cal.kappa_double.value / cal.kappa.value - 1.0);
  out.push_back(make_line(8, "(ii) kappa for weight 2", "kappa(2 gamma) = kappa(gamma)",
                          num(cal.kappa_double.value) + " vs " + num(cal.kappa.value), "rel 0.05", par <= 0.05));
  const MCResult held = S.result(4);
  const double kheld = 2.0 * held.estimate;
  const double held_rel = std::fabs(kheld / kd - 1.0);
  out.push_back(make_line(8, "(ii) held-out kappa at L=" + num(run.lheld) + " (test seed)",
                          "2 int s(X,gamma,L)/L^2 dmu_wp = kappa", num(kheld) + " +- " + num(2.0 * held.std_error) +
                              " vs " + to_string(kappa),
                          "rel 0.05", held_rel <= 0.05));

  const MCResult b = S.result(1), bh = S.result(2);
  const double target = kd * std::numbers::pi * std::numbers::pi / 12.0;
  const double trunc = std::fabs(b.estimate - bh.estimate);
  const double b_rel = std::fabs(b.estimate / target - 1.0);
  out.push_back(make_line(8, "(ii) b_{1,1}", "int B dmu_wp = sum_q c(q gamma) = kappa pi^2/12",
                          num(b.estimate) + " +- " + num(std::hypot(b.std_error, trunc)) + " (stat " +
                              num(b.std_error) + ", truncation |b(L)-b(L/2)| " + num(trunc) + ") vs " + num(target),
                          "rel 0.1", b_rel <= 0.1));

  const MCResult a = S.result(3), a_half = S.result(3, run.half);
  const double dbl = std::fabs(a_half.estimate / a.estimate - 1.0);
  const double cov = a.std_error / a.estimate;
  out.push_back(make_line(8, "(iii) a_{1,1} under sample doubling", "int B^2 dmu_wp < infinity",
                          num(a_half.estimate) + " (n=" + std::to_string(run.half) + ") -> " + mc_str(a) +
                              " (n=" + std::to_string(S.count) + "), rel change " + num(dbl) + ", CoV " + num(cov),
                          "rel change <= 0.1, CoV <= 0.1", dbl <= 0.1 && cov <= 0.1));

  const double c1 = kd / 2.0;
  const double ratio = a.estimate / (b.estimate * b.estimate);
  struct Pair {
    const char* name;
    std::size_t j;
    double c2;
  };
  for (const Pair& p : {Pair{"(gamma, 2 gamma)", 5, kd / 8.0}, Pair{"(gamma, gamma)", 6, kd / 2.0}}) {
    const MCResult r = S.result(p.j);
    const double expect = ratio * c1 * p.c2;
    const double rel = std::fabs(r.estimate / expect - 1.0);
    out.push_back(make_line(8, std::string("(iv) joint frequency ") + p.name + " at L=" + num(run.ljoint),
                            "int s(X,g1,L) s(X,g2,L)/L^4 dmu_wp -> (a/b^2) c(g1) c(g2)",
                            mc_str(r) + " vs " + num(expect), "rel 0.15", rel <= 0.15));
  }
  return out;
}

std::vector<CheckLine> Verifier::check_determinism() {
  std::vector<CheckLine> out;
  const SurfaceType s11(1, 1);
  const CellSpec spec{s11, 1, cfg_.constants.epsilon, kTorusBersBound, 0.0};
  const auto f = log_f_power(2.0, cfg_.constants.epsilon);
  const MCResult r1 = mc_integrate_log(f, spec, 20000, cfg_.seeds.run, Sampling::CuspAdapted, 1);
  const MCResult r4 = mc_integrate_log(f, spec, 20000, cfg_.seeds.run, Sampling::CuspAdapted, 4);
  out.push_back(make_line(9, "cell integration, 1 vs 4 threads", "result independent of worker count",
                          mc_str(r1) + " / " + mc_str(r4), "bitwise",
                          same_bits(r1.estimate, r4.estimate) && same_bits(r1.std_error, r4.std_error)));
  auto g = [](const TorusPoint& X, std::span<double> o) {
    const auto lens = short_slope_lengths(X, 40.0);
    o[0] = static_cast<double>(count_b(lens, 40.0)) / 1600.0;
  };
  ModuliOptions o1{kTorusBersBound, cfg_.symmetry_factor, 1}, o4 = o1;
  o4.threads = 4;
  const auto m1 = mc_moduli_multi(g, 1, 4000, cfg_.seeds.run, o1);
  const auto m4 = mc_moduli_multi(g, 1, 4000, cfg_.seeds.run, o4);
  out.push_back(make_line(9, "moduli integration, 1 vs 4 threads", "result independent of worker count",
                          mc_str(m1.result(0)) + " / " + mc_str(m4.result(0)), "bitwise",
                          m1.values == m4.values && same_bits(m1.result(0).estimate, m4.result(0).estimate)));
  RunConfig q = quick_profile(cfg_);
  q.checks.erase(std::remove(q.checks.begin(), q.checks.end(), 9), q.checks.end());
  q.threads = 1;
  const std::string a = Verifier(q).run().str();
  q.threads = 4;
  const std::string b = Verifier(q).run().str();
  out.push_back(make_line(9, "quick verify report, 1 vs 4 threads", "report body byte-identical",
                          std::to_string(a.size()) + " / " + std::to_string(b.size()) + " bytes", "identical",
                          a == b));
  return out;
}

VerifyReport run_verify(const RunConfig& cfg) { return Verifier(cfg).run(); }

RunConfig quick_profile(RunConfig cfg) {
  Budgets& b = cfg.budgets;
  b.lattice_L = 200.0;
  b.cell_samples = 4000;
  b.symmetry_samples = 4000;
  b.moduli_samples = 2000;
  b.moduli_lmax = 40.0;
  b.calibration_points = 20;
  b.sandwich_points = 10;
  b.sandwich_thin_points = 4;
  b.asymptotic_points = 3;
  b.uniform_points = 10;
  b.frequency_cap = 20;
  return cfg;
}

}  // namespace mlstat
