#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlstat {

struct SurfaceType {
  int genus = 0;
  int punctures = 0;

  SurfaceType() = default;
  // throws DomainError unless 2 - 2g - n < 0
  SurfaceType(int g, int n);

  int cuff_count() const { return 3 * genus - 3 + punctures; }
  int dim() const { return 2 * cuff_count(); }
  int region_count() const { return 2 * genus - 2 + punctures; }
  int euler_characteristic() const { return 2 - 2 * genus - punctures; }

  std::string name() const;  // "S11", "S04", ...
  bool operator==(const SurfaceType&) const = default;
};

// Region slots hold a cuff index 1..N or kCusp.
inline constexpr int kCusp = 0;

struct PantsDecomposition {
  SurfaceType surface;
  std::vector<std::vector<int>> regions;

  int cuff_count() const { return surface.cuff_count(); }
};

struct ValidationReport {
  bool ok = true;
  std::string violation;  // short name of the first violated constraint
  std::string detail;

  explicit operator bool() const { return ok; }
};

ValidationReport validate_decomposition(const PantsDecomposition& dec);

// S11, S04, S12, S20. Throws ConfigError for anything else.
PantsDecomposition builtin_surface(std::string_view name);
std::vector<std::string> builtin_surface_names();

// Text format, one directive per line, '#' comments:
//   surface <g> <n>
//   region <slot> <slot> <slot>     (slot = cuff index or '*')
PantsDecomposition parse_decomposition(std::string_view text);
PantsDecomposition load_decomposition(const std::string& path);
std::string format_decomposition(const PantsDecomposition& dec);

// Either a builtin name or a path to a decomposition file.
PantsDecomposition resolve_surface(std::string_view name_or_path);

}  // namespace mlstat
