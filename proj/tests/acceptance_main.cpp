#include <cstdio>

#include "fractal_ineq/acceptance.hpp"

// Prints one line per acceptance criterion and a trailing fails=N summary.
// The exit code is the failure count; ctest additionally pins the expected
// output signature, so any drift in which criteria fail turns the gate red.
int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const auto results = fractal_ineq::run_acceptance(42);
  int fails = 0;
  for (const auto& r : results) {
    std::printf("[%s] %d %s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.details.c_str());
    fails += r.pass ? 0 : 1;
    if (r.seconds >= 0.0) {
      std::printf("      %d elapsed %.3fs\n", r.id, r.seconds);
    }
  }
  std::printf("fails=%d\n", fails);
  return fails;
}
