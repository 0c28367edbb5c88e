#include <iostream>
#include <string>
#include <vector>

#include "gnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gnet::cli::run(args, std::cout, std::cerr);
}
