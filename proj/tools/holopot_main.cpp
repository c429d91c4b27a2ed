#include <iostream>
#include <string>
#include <vector>

#include "holopot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return holopot::cli::run(std::move(args), std::cout, std::cerr);
}
