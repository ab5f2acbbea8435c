#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mlstat/bounds.hpp"
#include "mlstat/config.hpp"
#include "mlstat/frequencies.hpp"
#include "mlstat/torus.hpp"

namespace mlstat {

struct CheckLine {
  int criterion = 0;
  std::string name;
  std::string anchor;  // the mathematical statement being tested
  std::string measured;
  std::string tolerance;
  bool pass = false;
};

struct VerifyReport {
  std::string config_json;
  std::vector<int> criteria;
  std::vector<CheckLine> lines;

  bool criterion_passed(int c) const;
  bool passed() const;
  // deterministic: no timings, no host information
  std::string str() const;
};

// Values that the checks fit on calibration-seed data before testing on test-seed data.
struct Calibration {
  double comparison_c = 0.0;
  SandwichConstants sandwich;
  int symmetry_factor = 0;
  double symmetry_ratio = 0.0;  // m estimate at factor 1 over V_{1,1}(0)
  KappaEstimate kappa;          // a = 1 at L = 40
  KappaEstimate kappa_half;     // a = 1 at L = 20
  KappaEstimate kappa_double;   // a = 2 at L = 40
};

class Verifier {
 public:
  explicit Verifier(RunConfig cfg);
  ~Verifier();

  const RunConfig& config() const { return cfg_; }

  std::vector<CheckLine> run_check(int criterion);
  VerifyReport run();  // every check listed in the config

  double calibrate_comparison_c();
  SandwichConstants calibrate_sandwich();
  const Calibration& moduli_calibration();  // symmetry factor and kappa

  // Point sets shared by the checks.
  std::vector<TorusPoint> calibration_points();
  std::vector<TorusPoint> sandwich_test_points();

 private:
  struct MainRun;
  const MainRun& main_run();

  std::vector<CheckLine> check_lattice();
  std::vector<CheckLine> check_cells();
  std::vector<CheckLine> check_square_integrability();
  std::vector<CheckLine> check_sandwich();
  std::vector<CheckLine> check_asymptotics();
  std::vector<CheckLine> check_uniform_bound();
  std::vector<CheckLine> check_frequencies();
  std::vector<CheckLine> check_moduli();
  std::vector<CheckLine> check_determinism();

  RunConfig cfg_;
  VolumeTable table_;
  std::unique_ptr<Calibration> calib_;
  std::unique_ptr<MainRun> main_;
  std::map<std::string, double> cache_;
};

VerifyReport run_verify(const RunConfig& cfg);

// Small budgets for smoke runs; results are not expected to meet the tolerances.
RunConfig quick_profile(RunConfig cfg);

// Titles of criteria 1..9 as printed by the acceptance runner.
std::string criterion_title(int criterion);

}  // namespace mlstat
