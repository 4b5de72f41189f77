#include <iostream>
#include <string>
#include <vector>

#include "torsionlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return torsionlab::cli::run(args, std::cout, std::cerr);
}
