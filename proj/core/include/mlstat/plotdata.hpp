#pragma once

#include <string>
#include <vector>

namespace mlstat {

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  double yerr = 0.0;
};

using Series = std::vector<PlotPoint>;

// CSV with header x,y,yerr; throws Error when the path cannot be written.
void emit_plotdata(const Series& series, const std::string& path);
std::string format_plotdata(const Series& series);

}  // namespace mlstat
