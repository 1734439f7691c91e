#include <iostream>
#include <string>
#include <vector>

#include "qv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qv::cli::run(args, std::cout, std::cerr);
}
