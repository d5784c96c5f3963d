#include <iostream>
#include <string>
#include <vector>

#include "barycentric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bary::cli::run(args, std::cout, std::cerr);
}
