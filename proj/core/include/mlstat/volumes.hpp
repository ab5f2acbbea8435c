#pragma once

#include <map>
#include <string>
#include <string_view>
#include <tuple>

#include "mlstat/pi_poly.hpp"

namespace mlstat {

// Weil-Petersson volume polynomials V_{g,n}(b_1, ..., b_m), keyed by (g, n, m) where m <= n
// boundaries are geodesic and the remaining n - m are cusps.
//
// Record format, one per line, '#' comments:
//   (1 1 1) : 1/48*b1^2 + 1/12*pi^2
// Terms are '+'-separated products of a rational, pi^<even>, and b<i>^<even>.
class VolumeTable {
 public:
  VolumeTable();  // V_{0,3} = 1 only

  static VolumeTable parse(std::string_view text, std::string_view origin = "<string>");
  static VolumeTable load(const std::string& path);

  void insert(int g, int n, int boundaries, PiPoly poly);  // validates
  bool contains(int g, int n, int boundaries) const;
  // Falls back to the full-boundary entry (g, n, n) with the trailing n - m variables set to 0.
  PiPoly lookup(int g, int n, int boundaries) const;

  // m_{g,n} = V_{g,n}(0)
  PiNumber moduli_volume(int g, int n) const;

  const std::map<std::tuple<int, int, int>, PiPoly>& entries() const { return entries_; }

 private:
  std::map<std::tuple<int, int, int>, PiPoly> entries_;
};

}  // namespace mlstat
