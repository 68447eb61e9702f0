#include <iostream>
#include <string>
#include <vector>

#include "continuum_lab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return continuum_lab::dispatch(args, std::cout, std::cerr);
}
