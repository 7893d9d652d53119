#include <iostream>
#include <string>
#include <vector>

#include "repstat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return repstat::run(args, std::cout, std::cerr);
}
