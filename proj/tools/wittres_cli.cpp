#include <iostream>
#include <vector>

#include "wittres/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wittres::run_command(args, std::cout, std::cerr);
}
