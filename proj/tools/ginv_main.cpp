#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ginv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ginv::run_cli(args, std::cout, std::cerr, std::getenv("GINV_SEED"));
}
