#include <iostream>
#include <string>
#include <vector>

#include "msf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return msf::run_cli(args, std::cout, std::cerr);
}
