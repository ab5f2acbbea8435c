#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlstat {

using Rational = mpq_class;

// "p", "p/q", optional sign; throws ConfigError
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Finite Laurent sums  sum_j c_j pi^{2j}  with rational c_j.
class PiNumber {
 public:
  PiNumber() = default;
  PiNumber(const Rational& q);  // NOLINT: rationals embed
  PiNumber(long v) : PiNumber(Rational(v)) {}
  static PiNumber pi2_power(int j, const Rational& c = 1);

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool all_positive() const;
  bool all_nonnegative() const;
  Rational coefficient(int j) const;

  double to_double() const;
  std::string str() const;  // "1/12*pi^2 + 1/48"

  PiNumber& operator+=(const PiNumber& o);
  PiNumber& operator-=(const PiNumber& o);
  PiNumber& operator*=(const PiNumber& o);
  PiNumber operator-() const;
  // division only by monomials; throws DomainError otherwise
  PiNumber& operator/=(const PiNumber& o);

  friend PiNumber operator+(PiNumber a, const PiNumber& b) { return a += b; }
  friend PiNumber operator-(PiNumber a, const PiNumber& b) { return a -= b; }
  friend PiNumber operator*(PiNumber a, const PiNumber& b) { return a *= b; }
  friend PiNumber operator/(PiNumber a, const PiNumber& b) { return a /= b; }
  bool operator==(const PiNumber& o) const { return terms_ == o.terms_; }

 private:
  void add(int j, const Rational& c);
  std::map<int, Rational> terms_;
};

// Quotients of PiNumbers with equality by cross-multiplication; enough to state
// identities such as (a / b^2) * b * b == a without a gcd in Q[pi^2].
class PiFraction {
 public:
  PiFraction() : num_(0), den_(1) {}
  PiFraction(PiNumber n, PiNumber d = PiNumber(1));  // throws on zero denominator

  const PiNumber& num() const { return num_; }
  const PiNumber& den() const { return den_; }
  double to_double() const { return num_.to_double() / den_.to_double(); }
  std::string str() const;

  PiFraction& operator+=(const PiFraction& o);
  PiFraction& operator-=(const PiFraction& o);
  PiFraction& operator*=(const PiFraction& o);
  PiFraction& operator/=(const PiFraction& o);
  friend PiFraction operator+(PiFraction a, const PiFraction& b) { return a += b; }
  friend PiFraction operator-(PiFraction a, const PiFraction& b) { return a -= b; }
  friend PiFraction operator*(PiFraction a, const PiFraction& b) { return a *= b; }
  friend PiFraction operator/(PiFraction a, const PiFraction& b) { return a /= b; }
  bool operator==(const PiFraction& o) const { return num_ * o.den_ == o.num_ * den_; }

 private:
  void tidy();
  PiNumber num_, den_;
};

// Multivariate polynomial with PiNumber coefficients; exponents are raw powers of x_1..x_k.
class PiPoly {
 public:
  using Exponents = std::vector<int>;

  PiPoly() = default;
  explicit PiPoly(int nvars) : nvars_(nvars) {}
  static PiPoly constant(int nvars, const PiNumber& c);
  static PiPoly variable(int nvars, int index, int power = 1);  // 0-based index

  int nvars() const { return nvars_; }
  const std::map<Exponents, PiNumber>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  bool all_coefficients_positive() const;
  bool even_exponents() const;

  void add_term(const Exponents& e, const PiNumber& c);
  double evaluate(std::span<const double> x) const;
  PiNumber evaluate_at_zero() const;

  // Variable j of *this becomes variable target[j] of a polynomial in `nvars` variables,
  // or is set to zero when target[j] < 0.
  PiPoly substitute(const std::vector<int>& target, int nvars) const;

  PiPoly& operator+=(const PiPoly& o);
  PiPoly& operator*=(const PiPoly& o);
  friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
  friend PiPoly operator*(PiPoly a, const PiPoly& b) { return a *= b; }
  bool operator==(const PiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string str(std::string_view var = "x") const;

 private:
  int nvars_ = 0;
  std::map<Exponents, PiNumber> terms_;
};

// Univariate polynomial in L with PiNumber coefficients.
class LPolynomial {
 public:
  void add(int degree, const PiNumber& c);
  const std::map<int, PiNumber>& coefficients() const { return coeff_; }
  int degree() const { return coeff_.empty() ? -1 : coeff_.rbegin()->first; }
  PiNumber leading() const;
  PiNumber coefficient(int d) const;
  bool all_nonnegative() const;
  double evaluate(double L) const;
  LPolynomial scaled(const PiNumber& c) const;
  std::string str() const;
  bool operator==(const LPolynomial& o) const { return coeff_ == o.coeff_; }

 private:
  std::map<int, PiNumber> coeff_;
};

// zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!), exactly; m >= 1
PiNumber zeta_even(int m);
Rational bernoulli(int n);

}  // namespace mlstat
