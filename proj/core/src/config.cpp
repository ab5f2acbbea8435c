#include "mlstat/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "mlstat/errors.hpp"

#ifndef MLSTAT_DEFAULT_CONFIG
#define MLSTAT_DEFAULT_CONFIG "data/default_config.jsonc"
#endif

namespace mlstat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) throw ConfigError("config: unknown key '" + where + k + "'");
  }
}

template <class T>
void take(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  if constexpr (std::is_unsigned_v<T>)
    if (!j.at(key).is_number_unsigned())
      throw ConfigError("config: '" + where + key + "' must be a non-negative integer");
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value for '" + where + key + "': " + e.what());
  }
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.kappa["S11/nonsep"] = {{{"*", Rational(1, 2)}}, "calibrated against torus-backend counts"};
  c.types["S11"] = {"S11/nonsep"};
  c.types["S04"] = {"S04/sep"};
  return c;
}

RunConfig RunConfig::parse(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"surface", "constants", "volumeTable", "kappa", "types", "sandwich", "symmetryFactor", "seeds",
                  "budgets", "outputDir", "checks", "threads"},
                 "");
  RunConfig c = defaults();
  c.base_dir = base_dir;
  take(j, "surface", c.surface, "");
  take(j, "volumeTable", c.volume_table, "");
  take(j, "symmetryFactor", c.symmetry_factor, "");
  take(j, "outputDir", c.output_dir, "");
  take(j, "checks", c.checks, "");
  take(j, "threads", c.threads, "");
  if (j.contains("constants")) {
    const auto& k = j["constants"];
    reject_unknown(k, {"epsilon", "bersBound", "comparisonC"}, "constants.");
    take(k, "epsilon", c.constants.epsilon, "constants.");
    take(k, "bersBound", c.constants.bers_bound, "constants.");
    take(k, "comparisonC", c.constants.comparison_c, "constants.");
  }
  if (j.contains("sandwich")) {
    const auto& k = j["sandwich"];
    reject_unknown(k, {"C1", "C2"}, "sandwich.");
    take(k, "C1", c.sandwich.c1, "sandwich.");
    take(k, "C2", c.sandwich.c2, "sandwich.");
  }
  if (j.contains("seeds")) {
    const auto& k = j["seeds"];
    reject_unknown(k, {"run", "calibration", "test"}, "seeds.");
    take(k, "run", c.seeds.run, "seeds.");
    take(k, "calibration", c.seeds.calibration, "seeds.");
    take(k, "test", c.seeds.test, "seeds.");
  }
  if (j.contains("budgets")) {
    const auto& k = j["budgets"];
    Budgets& b = c.budgets;
    reject_unknown(k,
                   {"latticeL", "cellSamples", "symmetrySamples", "moduliSamples", "moduliLmax", "calibrationPoints",
                    "sandwichPoints", "sandwichThinPoints", "asymptoticPoints", "uniformPoints", "frequencyCap"},
                   "budgets.");
    take(k, "latticeL", b.lattice_L, "budgets.");
    take(k, "cellSamples", b.cell_samples, "budgets.");
    take(k, "symmetrySamples", b.symmetry_samples, "budgets.");
    take(k, "moduliSamples", b.moduli_samples, "budgets.");
    take(k, "moduliLmax", b.moduli_lmax, "budgets.");
    take(k, "calibrationPoints", b.calibration_points, "budgets.");
    take(k, "sandwichPoints", b.sandwich_points, "budgets.");
    take(k, "sandwichThinPoints", b.sandwich_thin_points, "budgets.");
    take(k, "asymptoticPoints", b.asymptotic_points, "budgets.");
    take(k, "uniformPoints", b.uniform_points, "budgets.");
    take(k, "frequencyCap", b.frequency_cap, "budgets.");
  }
  if (j.contains("types")) {
    c.types.clear();
    for (const auto& [surf, list] : j["types"].items()) c.types[surf] = list.get<std::vector<std::string>>();
  }
  if (j.contains("kappa")) {
    c.kappa.clear();
    for (const auto& [type, table] : j["kappa"].items()) {
      KappaTable kt;
      for (const auto& [cls, v] : table.items()) {
        if (cls == "provenance") {
          kt.provenance = v.get<std::string>();
          continue;
        }
        if (!v.is_string()) throw ConfigError("config: kappa." + type + "." + cls + " must be a rational string");
        kt.values[cls] = parse_rational(v.get<std::string>());
        if (kt.values[cls] <= 0) throw ConfigError("config: kappa values must be positive");
      }
      c.kappa[type] = std::move(kt);
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  fs::path dir = fs::path(path).parent_path();
  return parse(ss.str(), dir.empty() ? "." : dir.string());
}

std::string RunConfig::resolve(const std::string& path) const {
  fs::path p(path);
  if (p.is_absolute()) return p.string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

void RunConfig::validate() const {
  try {
    constants.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  resolve_surface(surface);
  if (!fs::exists(resolve(volume_table))) throw ConfigError("volume table '" + resolve(volume_table) + "' not found");
  if (symmetry_factor != 1 && symmetry_factor != 2) throw ConfigError("symmetryFactor must be 1 or 2");
  const Budgets& b = budgets;
  if (!(b.lattice_L > 0) || b.cell_samples < 2 || b.symmetry_samples < 2 || b.moduli_samples < 2 ||
      !(b.moduli_lmax >= 10) || b.calibration_points < 1 || b.sandwich_points < 1 || b.asymptotic_points < 1 ||
      b.uniform_points < 1 || b.frequency_cap < 1)
    throw ConfigError("budgets must be positive (moduliLmax >= 10)");
  if (sandwich.c1 < 0 || sandwich.c2 < 0) throw ConfigError("sandwich constants must be nonnegative");
  for (int c : checks)
    if (c < 1 || c > 9) throw ConfigError("checks must be in 1..9");
}

VolumeTable RunConfig::load_volume_table() const { return VolumeTable::load(resolve(volume_table)); }

std::vector<MulticurveType> RunConfig::multicurve_types(const std::string& surface_name) const {
  auto it = types.find(surface_name);
  if (it == types.end()) throw ConfigError("no multicurve types configured for " + surface_name);
  std::vector<MulticurveType> out;
  for (const auto& name : it->second) {
    MulticurveType t{name, builtin_cut(name), {}};
    if (auto k = kappa.find(name); k != kappa.end()) t.kappa = k->second;
    out.push_back(std::move(t));
  }
  return out;
}

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["surface"] = surface;
  j["constants"] = {{"epsilon", constants.epsilon},
                    {"bersBound", constants.bers_bound},
                    {"comparisonC", constants.comparison_c}};
  j["volumeTable"] = volume_table;
  nlohmann::ordered_json kj = nlohmann::ordered_json::object();
  for (const auto& [type, t] : kappa) {
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    for (const auto& [cls, v] : t.values) e[cls] = v.get_str();
    if (!t.provenance.empty()) e["provenance"] = t.provenance;
    kj[type] = e;
  }
  j["kappa"] = kj;
  j["types"] = types;
  j["sandwich"] = {{"C1", sandwich.c1}, {"C2", sandwich.c2}};
  j["symmetryFactor"] = symmetry_factor;
  j["seeds"] = {{"run", seeds.run}, {"calibration", seeds.calibration}, {"test", seeds.test}};
  const Budgets& b = budgets;
  j["budgets"] = {{"latticeL", b.lattice_L},
                  {"cellSamples", b.cell_samples},
                  {"symmetrySamples", b.symmetry_samples},
                  {"moduliSamples", b.moduli_samples},
                  {"moduliLmax", b.moduli_lmax},
                  {"calibrationPoints", b.calibration_points},
                  {"sandwichPoints", b.sandwich_points},
                  {"sandwichThinPoints", b.sandwich_thin_points},
                  {"asymptoticPoints", b.asymptotic_points},
                  {"uniformPoints", b.uniform_points},
                  {"frequencyCap", b.frequency_cap}};
  j["outputDir"] = output_dir;
  j["checks"] = checks;
  return j.dump(2);
}

std::string default_config_path() { return MLSTAT_DEFAULT_CONFIG; }

}  // namespace mlstat
