#include <iostream>

#include "frechet_kit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fk::run_cli(args, std::cout, std::cerr);
}
