#include <iostream>

#include "cli_runner.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return shellbuckle::cli::run(args, std::cout, std::cerr);
}
