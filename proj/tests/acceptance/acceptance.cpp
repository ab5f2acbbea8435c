// Runs acceptance criteria 1-9 against the shipped configuration and prints one
// line per criterion. Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "mlstat/config.hpp"
#include "mlstat/errors.hpp"
#include "mlstat/verify.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  try {
    mlstat::RunConfig cfg = mlstat::RunConfig::load(MLSTAT_CONFIG);
    mlstat::Verifier v(cfg);
    int failed = 0;
    for (int c = 1; c <= 9; ++c) {
      const auto t0 = clock::now();
      const auto lines = v.run_check(c);
      const double secs = std::chrono::duration<double>(clock::now() - t0).count();
      bool pass = !lines.empty();
      for (const auto& l : lines) {
        pass = pass && l.pass;
        std::cout << "    " << (l.pass ? "ok   " : "FAIL ") << l.name << " | " << l.measured << " | " << l.tolerance
                  << '\n';
      }
      // wall-clock budgets; criterion 5 includes the moduli run it shares with 8
      double budget = 0.0;
      if (c == 1) budget = 60.0;
      if (c == 5) budget = 600.0;
      std::string extra;
      if (budget > 0.0) {
        const bool in_time = secs <= budget;
        pass = pass && in_time;
        char buf[64];
        std::snprintf(buf, sizeof buf, ", runtime budget %.0f s %s", budget, in_time ? "met" : "exceeded");
        extra = buf;
      }
      char head[160];
      std::snprintf(head, sizeof head, "criterion %d %s: %s (%.1f s%s)", c, pass ? "PASS" : "FAIL",
                    mlstat::criterion_title(c).c_str(), secs, extra.c_str());
      std::cout << head << std::endl;
      failed += pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
  } catch (const mlstat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
