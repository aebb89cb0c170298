#include <iostream>
#include <string>
#include <vector>

#include "fiberq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fiberq::cli::run(std::move(args), std::cout, std::cerr);
}
