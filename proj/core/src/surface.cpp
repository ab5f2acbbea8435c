#include "mlstat/surface.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "mlstat/errors.hpp"

namespace mlstat {

SurfaceType::SurfaceType(int g, int n) : genus(g), punctures(n) {
  if (g < 0 || n < 0) throw DomainError("surface: genus and punctures must be nonnegative");
  if (2 - 2 * g - n >= 0)
    throw DomainError("surface S" + std::to_string(g) + std::to_string(n) + " is not hyperbolic");
}

std::string SurfaceType::name() const {
  return "S" + std::to_string(genus) + std::to_string(punctures);
}

ValidationReport validate_decomposition(const PantsDecomposition& dec) {
  auto fail = [](std::string v, std::string d) { return ValidationReport{false, std::move(v), std::move(d)}; };
  const SurfaceType& s = dec.surface;
  if (2 - 2 * s.genus - s.punctures >= 0 || s.genus < 0 || s.punctures < 0)
    return fail("hyperbolicity", "2 - 2g - n must be negative");
  if (static_cast<int>(dec.regions.size()) != s.region_count())
    return fail("region count", "expected " + std::to_string(s.region_count()) + " regions, got " +
                                    std::to_string(dec.regions.size()));
  const int N = s.cuff_count();
  std::vector<int> seen(N + 1, 0);
  int cusps = 0;
  for (std::size_t r = 0; r < dec.regions.size(); ++r) {
    const auto& reg = dec.regions[r];
    if (reg.size() != 3)
      return fail("region arity", "region " + std::to_string(r + 1) + " has " + std::to_string(reg.size()) +
                                      " slots");
    for (int slot : reg) {
      if (slot == kCusp) {
        ++cusps;
      } else if (slot < 1 || slot > N) {
        return fail("cuff index range", "slot " + std::to_string(slot) + " outside 1.." + std::to_string(N));
      } else {
        ++seen[slot];
      }
    }
  }
  for (int i = 1; i <= N; ++i)
    if (seen[i] != 2)
      return fail("cuff multiplicity",
                  "cuff " + std::to_string(i) + " appears " + std::to_string(seen[i]) + " times");
  if (cusps != s.punctures)
    return fail("cusp count", std::to_string(cusps) + " cusp slots for " + std::to_string(s.punctures) +
                                  " punctures");
  return {};
}

namespace {

const std::map<std::string, PantsDecomposition, std::less<>>& registry() {
  static const std::map<std::string, PantsDecomposition, std::less<>> r = {
      {"S11", {SurfaceType(1, 1), {{1, 1, kCusp}}}},
      {"S04", {SurfaceType(0, 4), {{1, kCusp, kCusp}, {1, kCusp, kCusp}}}},
      {"S12", {SurfaceType(1, 2), {{1, 1, 2}, {2, kCusp, kCusp}}}},
      // theta graph: both pants bounded by all three cuffs
      {"S20", {SurfaceType(2, 0), {{1, 2, 3}, {1, 2, 3}}}},
  };
  return r;
}

}  // namespace

PantsDecomposition builtin_surface(std::string_view name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown surface '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> builtin_surface_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

PantsDecomposition parse_decomposition(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<SurfaceType> surface;
  std::vector<std::vector<int>> regions;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto where = [&] { return "decomposition line " + std::to_string(lineno) + ": "; };
    if (head == "surface") {
      int g = -1, n = -1;
      if (!(ls >> g >> n)) throw ConfigError(where() + "expected 'surface <g> <n>'");
      try {
        surface = SurfaceType(g, n);
      } catch (const DomainError& e) {
        throw ConfigError(where() + e.what());
      }
    } else if (head == "region") {
      std::vector<int> slots;
      std::string tok;
      while (ls >> tok) {
        if (tok == "*") {
          slots.push_back(kCusp);
          continue;
        }
        try {
          std::size_t used = 0;
          int v = std::stoi(tok, &used);
          if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
          slots.push_back(v);
        } catch (const std::exception&) {
          throw ConfigError(where() + "bad slot '" + tok + "'");
        }
      }
      regions.push_back(std::move(slots));
    } else {
      throw ConfigError(where() + "unknown directive '" + head + "'");
    }
  }
  if (!surface) throw ConfigError("decomposition: missing 'surface' line");
  PantsDecomposition dec{*surface, std::move(regions)};
  if (auto rep = validate_decomposition(dec); !rep)
    throw ConfigError("decomposition invalid (" + rep.violation + "): " + rep.detail);
  return dec;
}

PantsDecomposition load_decomposition(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open decomposition file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_decomposition(ss.str());
}

std::string format_decomposition(const PantsDecomposition& dec) {
  std::ostringstream os;
  os << "surface " << dec.surface.genus << ' ' << dec.surface.punctures << '\n';
  for (const auto& r : dec.regions) {
    os << "region";
    for (int s : r) {
      os << ' ';
      if (s == kCusp)
        os << '*';
      else
        os << s;
    }
    os << '\n';
  }
  return os.str();
}

PantsDecomposition resolve_surface(std::string_view name_or_path) {
  if (registry().count(name_or_path)) return builtin_surface(name_or_path);
  return load_decomposition(std::string(name_or_path));
}

}  // namespace mlstat
