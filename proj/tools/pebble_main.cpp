#include <iostream>
#include <string>
#include <vector>

#include "pebbling/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pebbling::run_command(args, std::cout, std::cerr);
}
