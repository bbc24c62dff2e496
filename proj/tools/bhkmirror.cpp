#include <iostream>
#include <string>
#include <vector>

#include "bhk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bhk::run_cli(args, std::cout, std::cerr);
}
