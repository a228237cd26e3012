#include <iostream>

#include "nerode/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nerode::cli::run_cli(args, std::cout, std::cerr);
}
