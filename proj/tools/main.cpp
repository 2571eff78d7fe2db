#include <iostream>
#include <string>
#include <vector>

#include "simplexcover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return simplexcover::run(args, std::cout, std::cerr);
}
