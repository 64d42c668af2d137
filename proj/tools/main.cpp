#include <iostream>
#include <string>
#include <vector>

#include "chiral_casimir/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chiral_casimir::cli::run(args, std::cout, std::cerr);
}
