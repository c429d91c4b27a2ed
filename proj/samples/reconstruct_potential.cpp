// Parses a field, checks exactness and recovers its potential both
// symbolically and by numeric line integration.
#include <iostream>

#include "holopot/holopot.hpp"

int main(int argc, char** argv) {
  using namespace holopot;
  const std::string text = argc > 1 ? argv[1] : "2*z1*z2 + i; z1^2 - 3*z2^2";
  const ExactField F = parse_field(text);
  const auto report = check_exact(F);
  std::cout << "field:     " << to_expression(F) << "\n";
  if (!report.exact) {
    std::cout << "not exact; worst pair (" << report.worst_pair->first + 1 << ", " << report.worst_pair->second + 1
              << ")\n";
    return 1;
  }
  const ExactPoly g = reconstruct_potential(F);
  std::cout << "potential: " << to_expression(g) << "\n";

  const FloatPoint z(F.dimension(), cdouble(0.3, -0.2));
  const cdouble symbolic = eval(to_float(g), z);
  const cdouble numeric = quad_reconstruct(wrap_field(F), FloatPoint(F.dimension()), z);
  std::cout << "g(z) symbolic " << symbolic << ", by quadrature " << numeric << "\n";
  return 0;
}
