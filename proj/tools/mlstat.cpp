// mlstat command line front end.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlstat/bounds.hpp"
#include "mlstat/config.hpp"
#include "mlstat/dt_lattice.hpp"
#include "mlstat/errors.hpp"
#include "mlstat/frequencies.hpp"
#include "mlstat/plotdata.hpp"
#include "mlstat/thurston.hpp"
#include "mlstat/torus.hpp"
#include "mlstat/verify.hpp"
#include "mlstat/wp_cells.hpp"

using namespace mlstat;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out;
};

RunConfig load_config(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) {
    cfg = RunConfig::load(g.config_path);
  } else if (std::filesystem::exists(default_config_path())) {
    cfg = RunConfig::load(default_config_path());
  } else {
    cfg = RunConfig::defaults();
  }
  if (g.seed) cfg.seeds.run = *g.seed;
  if (g.threads) cfg.threads = *g.threads;
  cfg.validate();
  return cfg;
}

void write_out(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + g.out + "'");
  f << text;
}

json with_config(const RunConfig& cfg, json body) {
  json j;
  j["config"] = json::parse(cfg.to_json());
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::string csv_header(const RunConfig& cfg) { return "# config: " + json::parse(cfg.to_json()).dump() + "\n"; }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in list '" + s + "'");
    }
  }
  return out;
}

FNPoint fn_from(const std::string& lengths, const std::string& twists, const SurfaceType& s) {
  FNPoint fn(parse_list(lengths), twists.empty() ? std::vector<double>{} : parse_list(twists));
  if (static_cast<int>(fn.size()) != s.cuff_count())
    throw ConfigError(s.name() + " needs " + std::to_string(s.cuff_count()) + " lengths");
  return fn;
}

// "w1,l1,w2,l2,..." or lengths "l1,l2,..." expanded to (w(l), l)
CombWeights weights_from(const std::string& weights, const std::string& lengths, int N) {
  if (!weights.empty()) {
    auto v = parse_list(weights);
    if (static_cast<int>(v.size()) != 2 * N) throw ConfigError("--weights needs 2N = " + std::to_string(2 * N) + " values");
    std::vector<double> w, l;
    for (int i = 0; i < N; ++i) {
      w.push_back(v[2 * i]);
      l.push_back(v[2 * i + 1]);
    }
    return CombWeights(w, l);
  }
  auto l = parse_list(lengths);
  if (static_cast<int>(l.size()) != N) throw ConfigError("--lengths needs N = " + std::to_string(N) + " values");
  return CombWeights::from_lengths(l);
}

std::string point_csv(const DTPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < p.m.size(); ++i) s += std::to_string(p.m[i]) + "," + std::to_string(p.t[i]) + ",";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mlstat: statistics of simple closed multicurves on hyperbolic surfaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "run configuration (JSON with comments)");
  app.add_option("--seed", g.seed, "overrides seeds.run");
  app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--out", g.out, "output file (default stdout)");

  // dt
  auto* dt = app.add_subcommand("dt", "Dehn-Thurston lattice");
  dt->require_subcommand(1);
  auto* dt_enum = dt->add_subcommand("enumerate", "lattice points of the combinatorial ball");
  std::string surface = "S11", weights, lengths, twists;
  double L = 10.0;
  for (auto* c : {dt_enum}) {
    c->add_option("--surface", surface, "builtin name or decomposition file");
    c->add_option("--weights", weights, "w1,l1,...");
    c->add_option("--lengths", lengths, "cuff lengths, weights (w(l), l)");
    c->add_option("--length", L, "ball radius")->required();
  }

  // measure
  auto* measure = app.add_subcommand("measure", "Thurston measure");
  measure->require_subcommand(1);
  auto* m_ball = measure->add_subcommand("ball", "closed form vs lattice ladder");
  std::vector<double> ladder = {250, 500, 1000, 2000};
  m_ball->add_option("--surface", surface);
  m_ball->add_option("--weights", weights);
  m_ball->add_option("--lengths", lengths);
  m_ball->add_option("--ladder", ladder, "lattice radii")->delimiter(',');

  // bounds
  auto* bounds = app.add_subcommand("bounds", "bounds on B(X)");
  bounds->require_subcommand(1);
  auto* b_eval = bounds->add_subcommand("eval", "BoundReport for a point of Teichmueller space");
  std::optional<double> eps_opt, count_L;
  b_eval->add_option("--surface", surface);
  b_eval->add_option("--lengths", lengths)->required();
  b_eval->add_option("--twists", twists);
  b_eval->add_option("--epsilon", eps_opt);
  b_eval->add_option("--count-length", count_L, "also evaluate the counting bound at this L");

  // cells
  auto* cells = app.add_subcommand("cells", "Fenchel-Nielsen cell integrals");
  cells->require_subcommand(1);
  auto* c_int = cells->add_subcommand("integrate", "Monte Carlo integral over a cell");
  int k = 0;
  std::string functional = "F2", sampling = "wp";
  std::size_t samples = 100000;
  double floor = 0.0;
  c_int->add_option("--surface", surface);
  c_int->add_option("--k", k, "number of thin cuffs");
  c_int->add_option("--functional", functional, "one, F2, Fp:<delta>, B-comb");
  c_int->add_option("--samples", samples);
  c_int->add_option("--sampling", sampling, "wp or cusp");
  c_int->add_option("--floor", floor, "lower cutoff of thin lengths");

  // freq
  auto* freq = app.add_subcommand("freq", "counting polynomials and frequencies");
  freq->require_subcommand(1);
  auto* f_comp = freq->add_subcommand("compute", "P(L, a.gamma) and c(a.gamma)");
  std::string type = "S11/nonsep", weight_list = "1";
  f_comp->add_option("--type", type);
  f_comp->add_option("--weights", weight_list, "integer weights per component");
  auto* f_sum = freq->add_subcommand("sum-b", "b from frequencies");
  int cap = 100;
  f_sum->add_option("--surface", surface);
  f_sum->add_option("--cap", cap);
  auto* f_joint = freq->add_subcommand("joint", "joint frequency (a/b^2) c1 c2");
  double c1 = 0, c2 = 0, av = 0, bv = 0;
  f_joint->add_option("--c1", c1)->required();
  f_joint->add_option("--c2", c2)->required();
  f_joint->add_option("--a", av)->required();
  f_joint->add_option("--b", bv)->required();

  // torus
  auto* torus = app.add_subcommand("torus", "once-punctured torus backend");
  torus->require_subcommand(1);
  double ell = 1.0, tau = 0.0, lmax = 80.0;
  int kk = 1;
  auto* t_count = torus->add_subcommand("count", "s(X, k gamma, L) and b(X, L)");
  auto* t_spec = torus->add_subcommand("spectrum", "simple length spectrum up to L");
  for (auto* c : {t_count, t_spec}) {
    c->add_option("--ell", ell)->required();
    c->add_option("--tau", tau);
    c->add_option("--length", L)->required();
  }
  t_count->add_option("--k", kk);
  auto* t_ladder = torus->add_subcommand("ladder", "B estimate ladder as x,y,yerr");
  t_ladder->add_option("--ell", ell)->required();
  t_ladder->add_option("--tau", tau);
  t_ladder->add_option("--lmax", lmax);
  auto* t_mc = torus->add_subcommand("mc", "moduli-space integral");
  std::string tfun = "one";
  t_mc->add_option("--functional", tfun, "one, B, B2, ss:<k1>,<k2>:<L>");
  t_mc->add_option("--samples", samples);
  t_mc->add_option("--lmax", lmax);
  auto* t_cal = torus->add_subcommand("calibrate", "fit C, C1, C2, symmetryFactor and kappa");

  // verify
  auto* verify = app.add_subcommand("verify", "acceptance checks");
  bool quick = false;
  std::vector<int> checks;
  verify->add_flag("--quick", quick, "small budgets");
  verify->add_option("--checks", checks, "subset of checks")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = load_config(g);
    const std::uint64_t seed = cfg.seeds.run;

    if (*dt_enum) {
      const PantsDecomposition dec = resolve_surface(surface);
      const CombWeights wts = weights_from(weights, lengths, dec.cuff_count());
      std::string out = csv_header(cfg);
      for (int i = 1; i <= dec.cuff_count(); ++i) out += "m" + std::to_string(i) + ",t" + std::to_string(i) + ",";
      out += "length\n";
      char buf[64];
      enumerate_ball(dec, wts, L, [&](const DTPoint& p) {
        std::snprintf(buf, sizeof buf, "%.17g\n", comb_length(p, wts));
        out += point_csv(p) + buf;
      });
      write_out(g, out);
    } else if (*m_ball) {
      const PantsDecomposition dec = resolve_surface(surface);
      const CombWeights wts = weights_from(weights, lengths.empty() ? "1" : lengths, dec.cuff_count());
      const ConvergenceFit fit = fit_convergence(dec, wts, ladder);
      json lad = json::array();
      for (const auto& p : fit.ladder) lad.push_back({{"L", p.L}, {"estimate", p.estimate}, {"rel_error", p.rel_error}});
      write_out(g, with_config(cfg, {{"surface", dec.surface.name()},
                                     {"closed_form", fit.closed_form},
                                     {"nu_thu", normalize(fit.closed_form, MeasureNorm::MuThu, MeasureNorm::NuThu,
                                                          dec.surface)},
                                     {"ladder", lad},
                                     {"K", fit.K},
                                     {"rate", fit.slope}})
                       .dump(2) + "\n");
    } else if (*b_eval) {
      const PantsDecomposition dec = resolve_surface(surface);
      Constants c = cfg.constants;
      if (dec.surface != SurfaceType(1, 1)) c.bers_bound = Constants::defaults_for(dec.surface).bers_bound;
      if (eps_opt) c.epsilon = *eps_opt;
      c.validate();
      const FNPoint fn = fn_from(lengths, twists, dec.surface);
      const BoundReport r = bound_report(dec.surface, fn, c, cfg.sandwich, count_L);
      write_out(g, with_config(cfg, {{"report", json::parse(r.to_json())}}).dump(2) + "\n");
    } else if (*c_int) {
      const SurfaceType s = resolve_surface(surface).surface;
      const CellSpec spec{s, k, cfg.constants.epsilon,
                          s == SurfaceType(1, 1) ? cfg.constants.bers_bound : Constants::defaults_for(s).bers_bound,
                          floor};
      spec.validate();
      const Sampling mode = parse_sampling(sampling);
      const MCResult r = mc_integrate_log(named_functional(functional, s, spec.epsilon), spec, samples, seed, mode,
                                          cfg.threads);
      json body = {{"surface", s.name()}, {"k", k}, {"functional", functional}, {"sampling", to_string(mode)},
                   {"floor", floor}, {"result", json::parse(r.to_json())}};
      if (functional == "F2") body["exact"] = f2_cell_integral(spec);
      if (functional == "one") body["exact"] = cell_volume(spec);
      write_out(g, with_config(cfg, body).dump(2) + "\n");
    } else if (*f_comp) {
      const CutData cut = builtin_cut(type);
      std::vector<Rational> a;
      std::vector<std::int64_t> ai;
      for (double w : parse_list(weight_list)) {
        if (w < 1 || w != static_cast<std::int64_t>(w)) throw ConfigError("weights must be positive integers");
        a.emplace_back(static_cast<long>(w));
        ai.push_back(static_cast<std::int64_t>(w));
      }
      if (static_cast<int>(a.size()) != cut.components) throw ConfigError("one weight per component");
      const VolumeTable table = cfg.load_volume_table();
      auto kt = cfg.kappa.find(type);
      std::optional<Rational> kappa;
      if (kt != cfg.kappa.end()) kappa = kt->second.find(ai);
      json body = {{"type", type}, {"weights", ai}};
      if (kappa) {
        body["kappa"] = to_string(*kappa);
        body["P"] = count_polynomial(cut, a, *kappa, table).str();
        const Frequency f = frequency(cut, a, *kappa, table);
        body["c"] = f.exact.str();
        body["c_value"] = f.value;
      } else {
        body["kappa"] = nullptr;
        body["P_over_kappa"] = count_polynomial(cut, a, Rational(1), table).str();
      }
      write_out(g, with_config(cfg, body).dump(2) + "\n");
    } else if (*f_sum) {
      const SurfaceType s = resolve_surface(surface).surface;
      const VolumeTable table = cfg.load_volume_table();
      const auto types = cfg.multicurve_types(s.name());
      const FrequencySum fs = b_from_frequencies(s, table, types, cap);
      json body = {{"surface", s.name()},
                   {"cap", cap},
                   {"partial", fs.partial.str()},
                   {"partial_value", fs.partial_value},
                   {"tail_bound", fs.tail_bound}};
      body["closed_form"] = fs.closed_form ? json(fs.closed_form->str()) : json(nullptr);
      if (fs.closed_form) body["closed_value"] = fs.closed_form->to_double();
      write_out(g, with_config(cfg, body).dump(2) + "\n");
    } else if (*f_joint) {
      write_out(g, with_config(cfg, {{"c1", c1}, {"c2", c2}, {"a", av}, {"b", bv},
                                     {"joint", joint_frequency(c1, c2, av, bv)}})
                       .dump(2) + "\n");
    } else if (*t_count) {
      TorusPoint X{ell, tau};
      X.validate();
      const auto lens = short_slope_lengths(X, L);
      const Systole sys = systole_slope(X);
      write_out(g, with_config(cfg, {{"ell", ell},
                                     {"tau", tau},
                                     {"L", L},
                                     {"k", kk},
                                     {"count_s", count_s(lens, kk, L)},
                                     {"count_b", count_b(lens, L)},
                                     {"systole", {{"slope", sys.slope.str()},
                                                  {"length", sys.length},
                                                  {"multiplicity", sys.multiplicity}}}})
                       .dump(2) + "\n");
    } else if (*t_spec) {
      TorusPoint X{ell, tau};
      X.validate();
      std::string out = csv_header(cfg) + "slope,p,q,length\n";
      char buf[64];
      for (const auto& s : enumerate_short_slopes(X, L)) {
        std::snprintf(buf, sizeof buf, "%.17g\n", s.length);
        out += s.slope.str() + "," + std::to_string(s.slope.p) + "," + std::to_string(s.slope.q) + "," + buf;
      }
      write_out(g, out);
    } else if (*t_ladder) {
      TorusPoint X{ell, tau};
      X.validate();
      Series series;
      for (const auto& [x, y] : estimate_B(X, lmax).ladder) series.push_back({x, y, 0.0});
      write_out(g, format_plotdata(series));
    } else if (*t_mc) {
      TorusFunctional f;
      const double Lm = lmax;
      if (tfun == "one") {
        f = [](const TorusPoint&) { return 1.0; };
      } else if (tfun == "B") {
        f = [Lm](const TorusPoint& X) { return static_cast<double>(count_b(X, Lm)) / (Lm * Lm); };
      } else if (tfun == "B2") {
        f = [Lm](const TorusPoint& X) {
          const double b = static_cast<double>(count_b(X, Lm)) / (Lm * Lm);
          return b * b;
        };
      } else if (tfun.rfind("ss:", 0) == 0) {
        const auto colon = tfun.find(':', 3);
        if (colon == std::string::npos) throw ConfigError("ss functional is ss:<k1>,<k2>:<L>");
        const auto ks = parse_list(tfun.substr(3, colon - 3));
        const auto Ls = parse_list(tfun.substr(colon + 1));
        if (ks.size() != 2 || Ls.size() != 1 || ks[0] < 1 || ks[1] < 1 || !(Ls[0] > 0))
          throw ConfigError("ss functional is ss:<k1>,<k2>:<L>");
        const int k1 = static_cast<int>(ks[0]), k2 = static_cast<int>(ks[1]);
        const double Ls0 = Ls[0];
        f = [k1, k2, Ls0](const TorusPoint& X) {
          const auto lens = short_slope_lengths(X, Ls0);
          return static_cast<double>(count_s(lens, k1, Ls0)) * static_cast<double>(count_s(lens, k2, Ls0)) /
                 std::pow(Ls0, 4);
        };
      } else {
        throw ConfigError("unknown torus functional '" + tfun + "' (one, B, B2, ss:<k1>,<k2>:<L>)");
      }
      const ModuliOptions opt{cfg.constants.bers_bound, cfg.symmetry_factor, cfg.threads};
      const MCResult r = mc_moduli(f, samples, seed, opt);
      write_out(g, with_config(cfg, {{"functional", tfun}, {"lmax", lmax},
                                     {"result", json::parse(r.to_json())}})
                       .dump(2) + "\n");
    } else if (*t_cal) {
      Verifier v(cfg);
      const double C = v.calibrate_comparison_c();
      const SandwichConstants sw = v.calibrate_sandwich();
      const Calibration& cal = v.moduli_calibration();
      json kappa = {{"value", cal.kappa.value},
                    {"stderr", cal.kappa.std_error},
                    {"L", cal.kappa.L},
                    {"rational", cal.kappa.rational ? json(to_string(*cal.kappa.rational)) : json(nullptr)},
                    {"value_half_L", cal.kappa_half.value},
                    {"value_weight_2", cal.kappa_double.value}};
      char buf[32];
      auto exact = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return json::parse(buf);
      };
      write_out(g, with_config(cfg, {{"comparisonC", exact(C)},
                                     {"sandwich", {{"C1", exact(sw.c1)}, {"C2", exact(sw.c2)}}},
                                     {"symmetryFactor", cal.symmetry_factor},
                                     {"symmetryRatio", cal.symmetry_ratio},
                                     {"kappa", kappa}})
                       .dump(2) + "\n");
    } else if (*verify) {
      if (quick) cfg = quick_profile(cfg);
      if (!checks.empty()) cfg.checks = checks;
      cfg.validate();
      const VerifyReport r = run_verify(cfg);
      write_out(g, r.str());
      return r.passed() ? 0 : 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
