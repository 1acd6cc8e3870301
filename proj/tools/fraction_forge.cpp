#include <iostream>

#include "fraction_forge/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ff::cli::run(args, std::cout, std::cerr);
}
