#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mlstat/bounds.hpp"
#include "mlstat/rng.hpp"
#include "mlstat/surface.hpp"

namespace mlstat {

// Fenchel-Nielsen box cell: cuffs 0..k-1 thin (floor < l <= eps), the rest thick
// (eps < l <= bersBound); every twist in [0, l).
struct CellSpec {
  SurfaceType surface;
  int thin_count = 0;
  double epsilon = 0.1;
  double bers_bound = 1.9248473002384139;
  double thin_floor = 0.0;

  void validate() const;
};

struct MCResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

double cell_volume(const CellSpec& spec);
// exact chart integral of F^2 over the cell
double f2_cell_integral(const CellSpec& spec);
// int_floor^eps int_0^l dtau dl / (l^2 log^2 l) = 1/|log eps| - 1/|log floor|
double thin_f2_factor(double eps, double floor = 0.0);
double thick_factor(double eps, double bers_bound);

// i.i.d. points with density proportional to prod dl_i dtau_i on the cell
std::vector<FNPoint> sample_cell(const CellSpec& spec, std::size_t count, std::uint64_t seed);

enum class Sampling {
  WeilPetersson,  // l_i with density ~ l on its range, weight = cell volume
  CuspAdapted,    // thin l_i = exp(-1/s), s uniform; importance weights
};
Sampling parse_sampling(std::string_view s);
std::string to_string(Sampling s);

// A sample carries log-lengths so that points far into the cusp stay usable:
// fn.lengths[i] may underflow to 0 while log_lengths[i] is exact.
struct CellSample {
  FNPoint fn;
  std::vector<double> log_lengths;
  double log_weight = 0.0;  // log of (cell measure / proposal density)
};

CellSample draw_cell_sample(const CellSpec& spec, Sampling mode, const CounterRng& rng, std::uint64_t index);

using Functional = std::function<double(const FNPoint&)>;
// returns log f; -inf encodes f = 0
using LogFunctional = std::function<double(const CellSample&)>;

// estimate = mean of f * weight (for WeilPetersson: cell_volume * mean f), stderr from the sample std.
MCResult mc_integrate(const Functional& f, const CellSpec& spec, std::size_t count, std::uint64_t seed,
                      Sampling mode = Sampling::WeilPetersson, unsigned threads = 1);
MCResult mc_integrate_log(const LogFunctional& logf, const CellSpec& spec, std::size_t count, std::uint64_t seed,
                          Sampling mode = Sampling::CuspAdapted, unsigned threads = 1);

// log F^p and log b_comb evaluated from log-lengths; "one", "F2", "Fp:<delta>", "B-comb".
LogFunctional log_f_power(double p, double eps);
LogFunctional log_b_comb(const SurfaceType& s);
LogFunctional named_functional(std::string_view name, const SurfaceType& s, double eps);

// Lengths uniform on {sum l_i <= L}, twists uniform on [0, l_i).
std::vector<FNPoint> sample_pants_gluing(const SurfaceType& s, double L, std::size_t count, std::uint64_t seed);

}  // namespace mlstat
