#include <iostream>
#include <string>
#include <vector>

#include "fo2cis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fo2cis::run_cli(args, std::cout, std::cerr);
}
