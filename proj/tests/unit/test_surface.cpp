#include <doctest.h>

#include "mlstat/errors.hpp"
#include "mlstat/surface.hpp"

using namespace mlstat;

TEST_CASE("surface type counts") {
  SurfaceType s11(1, 1), s04(0, 4), s20(2, 0), s12(1, 2);
  CHECK(s11.cuff_count() == 1);
  CHECK(s11.dim() == 2);
  CHECK(s11.region_count() == 1);
  CHECK(s04.cuff_count() == 1);
  CHECK(s04.region_count() == 2);
  CHECK(s20.cuff_count() == 3);
  CHECK(s20.region_count() == 2);
  CHECK(s12.cuff_count() == 2);
  CHECK(s11.euler_characteristic() == -1);
  CHECK(s20.name() == "S20");
  CHECK(SurfaceType(0, 3).cuff_count() == 0);
  CHECK_THROWS_AS(SurfaceType(1, 0), DomainError);
  CHECK_THROWS_AS(SurfaceType(0, 2), DomainError);
  CHECK_THROWS_AS(SurfaceType(-1, 5), DomainError);
}

TEST_CASE("builtin decompositions validate") {
  for (const auto& name : builtin_surface_names()) {
    const PantsDecomposition dec = builtin_surface(name);
    CAPTURE(name);
    CHECK(validate_decomposition(dec).ok);
    CHECK(static_cast<int>(dec.regions.size()) == dec.surface.region_count());
    CHECK(dec.surface.name() == name);
  }
  CHECK_THROWS_AS(builtin_surface("S33"), ConfigError);
}

TEST_CASE("every cuff appears twice and cusps match n") {
  for (const auto& name : builtin_surface_names()) {
    const PantsDecomposition dec = builtin_surface(name);
    std::vector<int> seen(dec.cuff_count() + 1, 0);
    for (const auto& r : dec.regions)
      for (int s : r) ++seen[s];
    CHECK(seen[kCusp] == dec.surface.punctures);
    for (int i = 1; i <= dec.cuff_count(); ++i) CHECK(seen[i] == 2);
  }
}

TEST_CASE("validation names the violated constraint") {
  PantsDecomposition dec = builtin_surface("S20");
  dec.regions[1] = {1, 2, 2};
  auto rep = validate_decomposition(dec);
  CHECK_FALSE(rep.ok);
  CHECK(rep.violation == "cuff multiplicity");

  dec = builtin_surface("S11");
  dec.regions[0] = {1, 1, 2};
  CHECK(validate_decomposition(dec).violation == "cuff index range");

  dec = builtin_surface("S04");
  dec.regions.pop_back();
  CHECK(validate_decomposition(dec).violation == "region count");

  dec = builtin_surface("S04");
  dec.regions[0] = {1, kCusp};
  CHECK(validate_decomposition(dec).violation == "region arity");
}

TEST_CASE("decomposition text round trip") {
  for (const auto& name : builtin_surface_names()) {
    const PantsDecomposition dec = builtin_surface(name);
    const PantsDecomposition back = parse_decomposition(format_decomposition(dec));
    CHECK(back.surface == dec.surface);
    CHECK(back.regions == dec.regions);
  }
  const auto dec = load_decomposition(MLSTAT_TEST_FIXTURES "/s12.dec");
  CHECK(dec.surface == SurfaceType(1, 2));
  CHECK(resolve_surface(MLSTAT_TEST_FIXTURES "/s12.dec").regions == dec.regions);
  CHECK_THROWS_AS(parse_decomposition("surface 1 1\nregion 1 1 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_decomposition("region 1 1 *\n"), ConfigError);
  CHECK_THROWS_AS(parse_decomposition("surface 1 1\nbogus\n"), ConfigError);
  CHECK_THROWS_AS(load_decomposition("/nonexistent/file.dec"), ConfigError);
}
