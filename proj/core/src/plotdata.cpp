#include "mlstat/plotdata.hpp"

#include <cstdio>
#include <fstream>

#include "mlstat/errors.hpp"

namespace mlstat {

std::string format_plotdata(const Series& series) {
  std::string out = "x,y,yerr\n";
  char buf[96];
  for (const auto& p : series) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x, p.y, p.yerr);
    out += buf;
  }
  return out;
}

void emit_plotdata(const Series& series, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << format_plotdata(series);
  if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace mlstat
