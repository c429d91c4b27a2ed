// Tabulates the bidisk probe: F_1 stays bounded while the second
// component of the only exact completion grows without bound.
#include <cstdio>

#include "holopot/holopot.hpp"

int main() {
  std::printf("%-10s %10s %10s %10s\n", "radius", "f1_sup", "f2_sup", "f2_corner");
  for (double r : {0.5, 0.9, 0.99, 0.999, 0.9999, 1.0 - 1e-6}) {
    const auto rep = holopot::bidisk_counterexample_probe(r);
    std::printf("%-10.7g %10.4f %10.4f %10.4f\n", r, rep.f1_sup, rep.f2_sup, rep.f2_corner);
  }
  return 0;
}
