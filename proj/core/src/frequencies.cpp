#include "mlstat/frequencies.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "mlstat/errors.hpp"

namespace mlstat {

void CutData::validate() const {
  if (components < 1) throw ConfigError("cut: need at least one component");
  if (components > whole.cuff_count())
    throw ConfigError("cut: more components than cuffs of " + whole.name());
  int chi = 0, cusps = 0;
  std::vector<int> uses(components + 1, 0);
  for (const auto& p : pieces) {
    if (static_cast<int>(p.boundary.size()) != p.surface.punctures)
      throw ConfigError("cut: piece " + p.surface.name() + " lists " + std::to_string(p.boundary.size()) +
                        " boundary slots");
    chi += p.surface.euler_characteristic();
    for (int b : p.boundary) {
      if (b == kCusp) {
        ++cusps;
      } else if (b < 1 || b > components) {
        throw ConfigError("cut: boundary label " + std::to_string(b) + " out of range");
      } else {
        ++uses[b];
      }
    }
  }
  if (chi != whole.euler_characteristic())
    throw ConfigError("cut: Euler characteristics of the pieces sum to " + std::to_string(chi) + ", expected " +
                      std::to_string(whole.euler_characteristic()));
  if (cusps != whole.punctures) throw ConfigError("cut: cusp slots do not match the punctures");
  for (int i = 1; i <= components; ++i)
    if (uses[i] != 2) throw ConfigError("cut: curve " + std::to_string(i) + " must bound exactly two slots");
}

PiPoly cut_volume(const CutData& cut, const VolumeTable& table) {
  cut.validate();
  const int k = cut.components;
  PiPoly total = PiPoly::constant(k, PiNumber(1));
  for (const auto& p : cut.pieces) {
    std::vector<int> labels;
    for (int b : p.boundary)
      if (b != kCusp) labels.push_back(b - 1);
    PiPoly v = table.lookup(p.surface.genus, p.surface.punctures, static_cast<int>(labels.size()));
    total *= v.substitute(labels, k);
  }
  return total;
}

SimplexTerm simplex_monomial_integral(std::span<const int> e, std::span<const Rational> a) {
  if (e.size() != a.size() || e.empty()) throw DomainError("simplex_monomial_integral: dimension mismatch");
  int sum = 0;
  mpz_class num = 1;
  Rational den = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw DomainError("simplex_monomial_integral: negative exponent");
    if (a[i] <= 0) throw DomainError("simplex_monomial_integral: weights must be positive");
    sum += e[i];
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), e[i]);
    num *= f;
    Rational p = 1;
    for (int j = 0; j <= e[i]; ++j) p *= a[i];
    den *= p;
  }
  const int degree = static_cast<int>(e.size()) + sum;
  mpz_class df;
  mpz_fac_ui(df.get_mpz_t(), degree);
  Rational c = Rational(num) / (Rational(df) * den);
  c.canonicalize();
  return {c, degree};
}

namespace {

void check_weights(const CutData& cut, std::span<const Rational> a) {
  if (static_cast<int>(a.size()) != cut.components)
    throw DomainError("weights: expected " + std::to_string(cut.components) + " entries");
  for (const auto& q : a)
    if (q <= 0) throw DomainError("weights must be positive");
}

}  // namespace

LPolynomial count_polynomial(const CutData& cut, std::span<const Rational> a, const Rational& kappa,
                             const VolumeTable& table) {
  check_weights(cut, a);
  if (kappa <= 0) throw DomainError("kappa must be positive");
  const PiPoly V = cut_volume(cut, table);
  LPolynomial P;
  std::vector<int> r(cut.components);
  for (const auto& [e, c] : V.terms()) {
    for (int i = 0; i < cut.components; ++i) r[i] = e[i] + 1;  // the x_1...x_k factor
    SimplexTerm s = simplex_monomial_integral(r, a);
    P.add(s.degree, c * PiNumber(s.coeff * kappa));
  }
  return P;
}

Frequency frequency(const CutData& cut, std::span<const Rational> a, const Rational& kappa, const VolumeTable& table) {
  LPolynomial P = count_polynomial(cut, a, kappa, table);
  if (P.degree() != cut.whole.dim())
    throw NumericError("count polynomial has degree " + std::to_string(P.degree()) + ", expected " +
                       std::to_string(cut.whole.dim()) + "; check the volume table and cut data");
  PiNumber c = P.leading();
  return {c, c.to_double()};
}

std::optional<Rational> KappaTable::find(std::span<const std::int64_t> a) const {
  std::string key;
  for (auto v : a) key += (v % 2 == 0) ? 'e' : 'o';
  if (auto it = values.find(key); it != values.end()) return it->second;
  if (auto it = values.find("*"); it != values.end()) return it->second;
  return std::nullopt;
}

Rational KappaTable::max_value() const {
  Rational m = 0;
  for (const auto& [k, v] : values) m = std::max(m, v);
  return m;
}

namespace {

struct TopTerm {
  PiNumber coeff;    // V coefficient times prod r_i! / D!
  std::vector<int> r;  // exponents after multiplying by x_1...x_k
};

// Terms of V(gamma, x) x_1...x_k reaching L-degree dim; c(a.gamma) = kappa(a) sum coeff prod a_i^{-(r_i+1)}.
std::vector<TopTerm> top_terms(const CutData& cut, const VolumeTable& table) {
  const PiPoly V = cut_volume(cut, table);
  const int k = cut.components;
  std::vector<TopTerm> out;
  std::vector<Rational> ones(k, Rational(1));
  for (const auto& [e, c] : V.terms()) {
    std::vector<int> r(k);
    for (int i = 0; i < k; ++i) r[i] = e[i] + 1;
    SimplexTerm s = simplex_monomial_integral(r, ones);
    if (s.degree == cut.whole.dim()) out.push_back({c * PiNumber(s.coeff), r});
  }
  if (out.empty()) throw NumericError("cut " + cut.whole.name() + ": no top-degree terms");
  return out;
}

// sum over a >= 1 with a_i of the given parity of a^{-s}
PiNumber parity_zeta(int s, bool even) {
  PiNumber z = zeta_even(s / 2);
  mpz_class p2 = 1;
  p2 <<= s;
  Rational inv = Rational(1) / Rational(p2);
  return even ? z * PiNumber(inv) : z * PiNumber(Rational(1) - inv);
}

}  // namespace

FrequencySum b_from_frequencies(const SurfaceType& s, const VolumeTable& table, std::span<const MulticurveType> types,
                                int cap) {
  if (cap < 1) throw DomainError("b_from_frequencies: cap must be >= 1");
  FrequencySum out;
  out.cap = cap;
  PiNumber closed;
  bool have_closed = true;
  const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
  for (const auto& T : types) {
    if (!(T.cut.whole == s)) throw ConfigError("type " + T.name + " belongs to " + T.cut.whole.name());
    const int k = T.cut.components;
    auto terms = top_terms(T.cut, table);

    // exact partial sum over [1, cap]^k
    std::vector<std::int64_t> a(k, 1);
    while (true) {
      auto kappa = T.kappa.find(a);
      if (!kappa) throw ConfigError("missing kappa for type " + T.name);
      PiNumber c;
      for (const auto& t : terms) {
        Rational w = 1;
        for (int i = 0; i < k; ++i) {
          mpz_class p;
          mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(a[i]), static_cast<unsigned long>(t.r[i] + 1));
          w /= Rational(p);
        }
        c += t.coeff * PiNumber(w);
      }
      out.partial += c * PiNumber(*kappa);
      int i = 0;
      while (i < k && a[i] == cap) a[i++] = 1;
      if (i == k) break;
      ++a[i];
    }

    // tail: c(a.gamma) <= (kappa(a)/kappa(1)) prod a_i^{-2} c(1.gamma), sum over the complement of the box
    std::vector<std::int64_t> ones(k, 1);
    const Rational k1 = *T.kappa.find(ones);
    PiNumber c1;
    for (const auto& t : terms) c1 += t.coeff;
    const double ratio = to_double(Rational(T.kappa.max_value() / k1));
    out.tail_bound += ratio * to_double(k1) * c1.to_double() *
                      (std::pow(z2, k) - std::pow(z2 - 1.0 / cap, k));

    // closed form over parity classes
    for (int mask = 0; mask < (1 << k) && have_closed; ++mask) {
      std::vector<std::int64_t> rep(k);
      for (int i = 0; i < k; ++i) rep[i] = (mask >> i & 1) ? 2 : 1;
      auto kappa = T.kappa.find(rep);
      if (!kappa) {
        have_closed = false;
        break;
      }
      PiNumber cls;
      for (const auto& t : terms) {
        PiNumber prod = t.coeff;
        for (int i = 0; i < k; ++i) prod *= parity_zeta(t.r[i] + 1, (mask >> i) & 1);
        cls += prod;
      }
      closed += cls * PiNumber(*kappa);
    }
  }
  out.partial_value = out.partial.to_double();
  if (have_closed) out.closed_form = closed;
  return out;
}

double joint_frequency(double c1, double c2, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("joint_frequency: a and b must be positive");
  return a / (b * b) * c1 * c2;
}

PiFraction joint_frequency(const PiFraction& c1, const PiFraction& c2, const PiFraction& a, const PiFraction& b) {
  if (!(a.to_double() > 0.0) || !(b.to_double() > 0.0))
    throw DomainError("joint_frequency: a and b must be positive");
  return a / (b * b) * c1 * c2;
}

namespace {

template <class F>
Statistics<F> stats_impl(std::span<const F> c, const F& a, const F& b, const F& m) {
  Statistics<F> s;
  for (const auto& ci : c) s.expectation.push_back(ci / m);
  s.covariance.assign(c.size(), std::vector<F>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) {
      F joint = a / (b * b) * c[i] * c[j];
      s.covariance[i][j] = joint / m - c[i] * c[j] / (m * m);
    }
  s.variance_B = a / m - b * b / (m * m);
  return s;
}

}  // namespace

Statistics<double> statistics(std::span<const double> c, double a, double b, double m) {
  if (!(m > 0.0)) throw DomainError("statistics: m must be positive");
  if (!(b > 0.0)) throw DomainError("statistics: b must be positive");
  return stats_impl<double>(c, a, b, m);
}

Statistics<PiFraction> statistics(std::span<const PiFraction> c, const PiFraction& a, const PiFraction& b,
                                  const PiFraction& m) {
  if (!(m.to_double() > 0.0)) throw DomainError("statistics: m must be positive");
  if (!(b.to_double() > 0.0)) throw DomainError("statistics: b must be positive");
  return stats_impl<PiFraction>(c, a, b, m);
}

std::optional<Rational> round_rational(double x, double tol, int max_den) {
  std::set<Rational> hits;
  for (int q = 1; q <= max_den; ++q) {
    const double p = std::round(x * q);
    if (std::fabs(p / q - x) <= tol) {
      Rational r(static_cast<long>(p), q);
      r.canonicalize();
      hits.insert(r);
    }
  }
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1) {
    std::string list;
    for (const auto& h : hits) list += " " + h.get_str();
    throw NumericError("estimate " + std::to_string(x) + " +- " + std::to_string(tol) +
                       " is too noisy to round; candidates:" + list);
  }
  return *hits.begin();
}

KappaEstimate calibrate_kappa(const CutData& cut, std::span<const Rational> a, const VolumeTable& table,
                              const CountingOracle& oracle, double L, int max_den) {
  if (!(L > 0.0)) throw DomainError("calibrate_kappa: L must be positive");
  LPolynomial P = count_polynomial(cut, a, Rational(1), table);
  KappaEstimate k;
  k.L = L;
  k.simplex_integral = P.evaluate(L);
  MCResult mc = oracle(L);
  k.value = mc.estimate / k.simplex_integral;
  k.std_error = mc.std_error / k.simplex_integral;
  k.rational = round_rational(k.value, 3.0 * k.std_error, max_den);
  return k;
}

CutData builtin_cut(const std::string& name) {
  const SurfaceType s03(0, 3);
  CutData c;
  if (name == "S11/nonsep") {
    c = {SurfaceType(1, 1), 1, {{s03, {1, 1, kCusp}}}};
  } else if (name == "S04/sep") {
    c = {SurfaceType(0, 4), 1, {{s03, {1, kCusp, kCusp}}, {s03, {1, kCusp, kCusp}}}};
  } else if (name == "S12/nonsep") {
    c = {SurfaceType(1, 2), 1, {{SurfaceType(0, 4), {1, 1, kCusp, kCusp}}}};
  } else if (name == "S12/sep") {
    c = {SurfaceType(1, 2), 1, {{SurfaceType(1, 1), {1}}, {s03, {1, kCusp, kCusp}}}};
  } else if (name == "S20/nonsep") {
    c = {SurfaceType(2, 0), 1, {{SurfaceType(1, 2), {1, 1}}}};
  } else if (name == "S20/sep") {
    c = {SurfaceType(2, 0), 1, {{SurfaceType(1, 1), {1}}, {SurfaceType(1, 1), {1}}}};
  } else {
    throw ConfigError("unknown multicurve type '" + name + "'");
  }
  c.validate();
  return c;
}

std::vector<std::string> builtin_cut_names() {
  return {"S11/nonsep", "S04/sep", "S12/nonsep", "S12/sep", "S20/nonsep", "S20/sep"};
}

}  // namespace mlstat
