//===- slicekit_main.cpp - slicekit command-line tool ---------------------===//

#include <iostream>

#include "slicekit/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slicekit::run_cli(args, std::cout, std::cerr);
}
