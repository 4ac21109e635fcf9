#include <iostream>
#include <string>
#include <vector>

#include "helmfuzz/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv, argv + argc);
  return helmfuzz::cli::run_cli(args, std::cout, std::cerr);
}
