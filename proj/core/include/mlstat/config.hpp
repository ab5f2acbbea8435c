#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlstat/bounds.hpp"
#include "mlstat/frequencies.hpp"
#include "mlstat/hypfun.hpp"
#include "mlstat/volumes.hpp"

namespace mlstat {

struct Seeds {
  std::uint64_t run = 1;
  std::uint64_t calibration = 271828;
  std::uint64_t test = 314159;
};

struct Budgets {
  double lattice_L = 2000.0;
  std::size_t cell_samples = 100000;
  std::size_t symmetry_samples = 100000;
  std::size_t moduli_samples = 100000;  // doubled once for the stability check
  double moduli_lmax = 80.0;
  std::size_t calibration_points = 200;
  std::size_t sandwich_points = 80;       // fundamental-domain test points
  std::size_t sandwich_thin_points = 20;  // l in [1e-3, 1e-1]
  std::size_t asymptotic_points = 10;
  std::size_t uniform_points = 50;
  int frequency_cap = 100;
};

struct RunConfig {
  std::string surface = "S11";
  Constants constants;
  std::string volume_table = "volumes.txt";
  std::map<std::string, KappaTable> kappa;  // keyed by multicurve type
  std::map<std::string, std::vector<std::string>> types;  // surface -> multicurve types
  SandwichConstants sandwich;
  int symmetry_factor = 2;
  Seeds seeds;
  Budgets budgets;
  std::string output_dir = ".";
  std::vector<int> checks = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  unsigned threads = 1;
  std::string base_dir = ".";  // relative paths resolve against this

  // Builtin defaults; the volume table path resolves against `base_dir`.
  static RunConfig defaults();
  // JSON with // and /* */ comments; unknown keys are rejected. Throws ConfigError.
  static RunConfig parse(const std::string& text, const std::string& base_dir);
  static RunConfig load(const std::string& path);

  std::string resolve(const std::string& path) const;
  // throws ConfigError when a referenced file is missing or a budget is nonpositive
  void validate() const;
  VolumeTable load_volume_table() const;
  std::vector<MulticurveType> multicurve_types(const std::string& surface_name) const;

  std::string to_json() const;
};

// Path of the configuration shipped with the sources (data/default_config.jsonc).
std::string default_config_path();

}  // namespace mlstat
