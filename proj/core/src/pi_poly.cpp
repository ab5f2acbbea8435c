#include "mlstat/pi_poly.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mlstat/errors.hpp"

namespace mlstat {

Rational parse_rational(std::string_view s) {
  std::string t(s);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  std::size_t b = 0;
  while (b < t.size() && std::isspace(static_cast<unsigned char>(t[b]))) ++b;
  t = t.substr(b);
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  auto digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = t;
  if (!body.empty() && body[0] == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  bool ok = slash == std::string_view::npos ? digits(body) : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw ConfigError("bad rational '" + std::string(s) + "'");
  Rational q;
  q.set_str(t, 10);
  if (q.get_den() == 0) throw ConfigError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

PiNumber::PiNumber(const Rational& q) { add(0, q); }

PiNumber PiNumber::pi2_power(int j, const Rational& c) {
  PiNumber p;
  p.add(j, c);
  return p;
}

void PiNumber::add(int j, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(j, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool PiNumber::all_positive() const {
  if (terms_.empty()) return false;
  for (const auto& [j, c] : terms_)
    if (c <= 0) return false;
  return true;
}

bool PiNumber::all_nonnegative() const {
  for (const auto& [j, c] : terms_)
    if (c < 0) return false;
  return true;
}

Rational PiNumber::coefficient(int j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? Rational(0) : it->second;
}

double PiNumber::to_double() const {
  long double s = 0.0L;
  const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
  for (const auto& [j, c] : terms_) {
    // mpq_get_d is exact to double rounding even for huge numerators/denominators
    s += static_cast<long double>(c.get_d()) * std::pow(pi2, static_cast<long double>(j));
  }
  return static_cast<double>(s);
}

std::string PiNumber::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    const int j = it->first;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    first = false;
    if (j == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << "pi";
    if (2 * j != 1) os << "^" << 2 * j;
  }
  return os.str();
}

PiNumber& PiNumber::operator+=(const PiNumber& o) {
  for (const auto& [j, c] : o.terms_) add(j, c);
  return *this;
}

PiNumber& PiNumber::operator-=(const PiNumber& o) {
  for (const auto& [j, c] : o.terms_) add(j, -c);
  return *this;
}

PiNumber& PiNumber::operator*=(const PiNumber& o) {
  PiNumber r;
  for (const auto& [j1, c1] : terms_)
    for (const auto& [j2, c2] : o.terms_) r.add(j1 + j2, c1 * c2);
  return *this = std::move(r);
}

PiNumber PiNumber::operator-() const {
  PiNumber r;
  for (const auto& [j, c] : terms_) r.add(j, -c);
  return r;
}

PiNumber& PiNumber::operator/=(const PiNumber& o) {
  if (!o.is_monomial()) throw DomainError("PiNumber: division by a non-monomial " + o.str());
  const auto& [j0, c0] = *o.terms_.begin();
  PiNumber r;
  for (const auto& [j, c] : terms_) r.add(j - j0, c / c0);
  return *this = std::move(r);
}

PiFraction::PiFraction(PiNumber n, PiNumber d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw DomainError("PiFraction: zero denominator");
  tidy();
}

void PiFraction::tidy() {
  if (den_.is_monomial()) {
    num_ /= den_;
    den_ = PiNumber(1);
  }
}

std::string PiFraction::str() const {
  if (den_ == PiNumber(1)) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

PiFraction& PiFraction::operator+=(const PiFraction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  tidy();
  return *this;
}

PiFraction& PiFraction::operator-=(const PiFraction& o) {
  PiFraction neg(-o.num_, o.den_);
  return *this += neg;
}

PiFraction& PiFraction::operator*=(const PiFraction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  tidy();
  return *this;
}

PiFraction& PiFraction::operator/=(const PiFraction& o) {
  if (o.num_.is_zero()) throw DomainError("PiFraction: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  tidy();
  return *this;
}

PiPoly PiPoly::constant(int nvars, const PiNumber& c) {
  PiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

PiPoly PiPoly::variable(int nvars, int index, int power) {
  if (index < 0 || index >= nvars) throw DomainError("PiPoly: variable index out of range");
  PiPoly p(nvars);
  Exponents e(nvars, 0);
  e[index] = power;
  p.add_term(e, PiNumber(1));
  return p;
}

int PiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

bool PiPoly::all_coefficients_positive() const {
  for (const auto& [e, c] : terms_)
    if (!c.all_positive()) return false;
  return true;
}

bool PiPoly::even_exponents() const {
  for (const auto& [e, c] : terms_)
    for (int v : e)
      if (v % 2 != 0) return false;
  return true;
}

void PiPoly::add_term(const Exponents& e, const PiNumber& c) {
  if (static_cast<int>(e.size()) != nvars_) throw DomainError("PiPoly: exponent vector has wrong length");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

double PiPoly::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != nvars_) throw DomainError("PiPoly: evaluate with wrong arity");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.to_double();
    for (int i = 0; i < nvars_; ++i) m *= std::pow(x[i], e[i]);
    s += m;
  }
  return s;
}

PiNumber PiPoly::evaluate_at_zero() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? PiNumber() : it->second;
}

PiPoly PiPoly::substitute(const std::vector<int>& target, int nvars) const {
  if (static_cast<int>(target.size()) != nvars_) throw DomainError("PiPoly: substitution map has wrong length");
  PiPoly r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(nvars, 0);
    bool vanishes = false;
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] == 0) continue;
      if (target[j] < 0) {
        vanishes = true;
        break;
      }
      ne[target[j]] += e[j];
    }
    if (!vanishes) r.add_term(ne, c);
  }
  return r;
}

PiPoly& PiPoly::operator+=(const PiPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("PiPoly: arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PiPoly& PiPoly::operator*=(const PiPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("PiPoly: arity mismatch");
  PiPoly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return *this = std::move(r);
}

std::string PiPoly::str(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const auto& [e, c] = *it;
    os << "(" << c.str() << ")";
    for (int i = 0; i < nvars_; ++i)
      if (e[i] > 0) {
        os << "*" << var << i + 1;
        if (e[i] > 1) os << "^" << e[i];
      }
  }
  return os.str();
}

void LPolynomial::add(int degree, const PiNumber& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = coeff_.emplace(degree, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeff_.erase(it);
  }
}

PiNumber LPolynomial::leading() const { return coeff_.empty() ? PiNumber() : coeff_.rbegin()->second; }

PiNumber LPolynomial::coefficient(int d) const {
  auto it = coeff_.find(d);
  return it == coeff_.end() ? PiNumber() : it->second;
}

bool LPolynomial::all_nonnegative() const {
  for (const auto& [d, c] : coeff_)
    if (!c.all_nonnegative()) return false;
  return true;
}

double LPolynomial::evaluate(double L) const {
  double s = 0.0;
  for (const auto& [d, c] : coeff_) s += c.to_double() * std::pow(L, d);
  return s;
}

LPolynomial LPolynomial::scaled(const PiNumber& c) const {
  LPolynomial r;
  for (const auto& [d, v] : coeff_) r.add(d, v * c);
  return r;
}

std::string LPolynomial::str() const {
  if (coeff_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")";
    if (it->first > 0) os << "*L^" << it->first;
  }
  return os.str();
}

Rational bernoulli(int n) {
  if (n < 0) throw DomainError("bernoulli: negative index");
  // Akiyama-Tanigawa; yields B_1 = +1/2, irrelevant for even n
  std::vector<Rational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return a[0];
}

PiNumber zeta_even(int m) {
  if (m < 1) throw DomainError("zeta_even: m must be >= 1");
  Rational B = bernoulli(2 * m);
  mpz_class fact = 1;
  for (int i = 2; i <= 2 * m; ++i) fact *= i;
  mpz_class pow2 = 1;
  pow2 <<= 2 * m;
  Rational c = B * Rational(pow2) / Rational(2 * fact);
  if (m % 2 == 0) c = -c;
  c.canonicalize();
  return PiNumber::pi2_power(m, c);
}

}  // namespace mlstat
