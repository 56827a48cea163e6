#include <iostream>
#include <string>
#include <vector>

#include "hexhybrid/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hexhybrid::run_cli(args, std::cout, std::cerr);
}
