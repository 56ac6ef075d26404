#include <iostream>
#include <string>
#include <vector>

#include "gda/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gda::cli_run(args, std::cout, std::cerr);
}
