// Builds a truncated series field degree by degree and integrates it.
#include <iostream>

#include "holopot/holopot.hpp"

int main() {
  using namespace holopot;
  TruncatedSeriesField<ExactComplex> g(2, 6);
  g.set_degree(1, parse_field("1; 0"));
  g.set_degree(2, parse_field("z2; z1"));
  g.set_degree(4, parse_field("z1^3; z2^3"));
  const auto f = series_reconstruct(g);
  for (const auto& [m, part] : f.parts()) std::cout << "degree " << m << ": " << to_expression(part) << "\n";
  for (const auto& d : series_norm_diagnostic(g, f)) {
    std::cout << "m=" << d.m << " sampled |f_m| " << d.p_lower << " <= bound " << d.q_upper << "\n";
  }
  std::cout << to_json(f).dump(2) << "\n";
  return 0;
}
