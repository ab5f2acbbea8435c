#include "mlstat/volumes.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "mlstat/errors.hpp"

namespace mlstat {

namespace {

std::string trim(std::string s) {
  auto ns = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), ns));
  s.erase(std::find_if(s.rbegin(), s.rend(), ns).base(), s.end());
  return s;
}

void check_poly(int g, int n, int m, const PiPoly& p, const std::string& where) {
  if (!p.even_exponents()) throw ConfigError(where + "volume polynomials are polynomials in b_i^2 (odd power found)");
  if (!p.all_coefficients_positive())
    throw ConfigError(where +
                      "negative or zero coefficient; Weil-Petersson volume polynomials have positive coefficients");
  if (p.total_degree() > 2 * (3 * g - 3 + n))
    throw ConfigError(where + "degree in b^2 exceeds 3g-3+n = " + std::to_string(3 * g - 3 + n));
  if (p.nvars() != m) throw ConfigError(where + "variable count mismatch");
}

PiPoly parse_poly(const std::string& body, int m, const std::string& where) {
  PiPoly poly(m);
  // split on top-level + and -, keeping the sign with the term
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1;
  std::string cur;
  for (char c : body) {
    if ((c == '+' || c == '-') && !trim(cur).empty()) {
      terms.emplace_back(sign, trim(cur));
      cur.clear();
      sign = c == '-' ? -1 : 1;
    } else if ((c == '+' || c == '-') && trim(cur).empty()) {
      if (c == '-') sign = -sign;
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) terms.emplace_back(sign, trim(cur));
  if (terms.empty()) throw ConfigError(where + "empty polynomial");

  static const std::regex pi_re(R"(pi(?:\^(\d+))?)");
  static const std::regex b_re(R"(b(\d+)(?:\^(\d+))?)");
  for (const auto& [sg, term] : terms) {
    Rational coeff = sg;
    int pi_power = 0;
    PiPoly::Exponents e(m, 0);
    std::stringstream ts(term);
    std::string f;
    while (std::getline(ts, f, '*')) {
      f = trim(f);
      std::smatch mt;
      if (std::regex_match(f, mt, pi_re)) {
        pi_power += mt[1].matched ? std::stoi(mt[1]) : 1;
      } else if (std::regex_match(f, mt, b_re)) {
        const int idx = std::stoi(mt[1]);
        if (idx < 1 || idx > m) throw ConfigError(where + "variable b" + std::to_string(idx) + " out of range");
        e[idx - 1] += mt[2].matched ? std::stoi(mt[2]) : 1;
      } else {
        try {
          coeff *= parse_rational(f);
        } catch (const ConfigError&) {
          throw ConfigError(where + "cannot parse factor '" + f + "'");
        }
      }
    }
    if (pi_power % 2 != 0) throw ConfigError(where + "odd power of pi in '" + term + "'");
    poly.add_term(e, PiNumber::pi2_power(pi_power / 2, coeff));
  }
  return poly;
}

}  // namespace

VolumeTable::VolumeTable() {
  for (int m = 0; m <= 3; ++m) entries_[{0, 3, m}] = PiPoly::constant(m, PiNumber(1));
}

void VolumeTable::insert(int g, int n, int m, PiPoly poly) {
  const std::string where = "volume (" + std::to_string(g) + " " + std::to_string(n) + " " + std::to_string(m) + "): ";
  if (g < 0 || n < 0 || 2 - 2 * g - n >= 0) throw ConfigError(where + "not a hyperbolic type");
  if (m < 0 || m > n) throw ConfigError(where + "boundary count must lie in 0..n");
  check_poly(g, n, m, poly, where);
  entries_[{g, n, m}] = std::move(poly);
}

bool VolumeTable::contains(int g, int n, int m) const {
  return entries_.count({g, n, m}) || entries_.count({g, n, n});
}

PiPoly VolumeTable::lookup(int g, int n, int m) const {
  if (auto it = entries_.find({g, n, m}); it != entries_.end()) return it->second;
  if (auto it = entries_.find({g, n, n}); it != entries_.end() && m <= n) {
    std::vector<int> target(n, -1);
    for (int i = 0; i < m; ++i) target[i] = i;
    return it->second.substitute(target, m);
  }
  throw ConfigError("volume table has no entry for (g, n, boundaries) = (" + std::to_string(g) + ", " +
                    std::to_string(n) + ", " + std::to_string(m) + ")");
}

PiNumber VolumeTable::moduli_volume(int g, int n) const { return lookup(g, n, 0).evaluate_at_zero(); }

VolumeTable VolumeTable::parse(std::string_view text, std::string_view origin) {
  VolumeTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  static const std::regex rec(R"(\s*\(\s*(\d+)\s+(\d+)\s+(\d+)\s*\)\s*:(.*))");
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    std::smatch m;
    if (!std::regex_match(line, m, rec)) throw ConfigError(where + "expected '(g n boundaries) : polynomial'");
    const int g = std::stoi(m[1]), n = std::stoi(m[2]), b = std::stoi(m[3]);
    try {
      t.insert(g, n, b, parse_poly(m[4], b, where));
    } catch (const DomainError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return t;
}

VolumeTable VolumeTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open volume table '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

}  // namespace mlstat
