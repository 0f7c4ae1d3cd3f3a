#include <iostream>

#include "toricmld/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toricmld::cli::run(args, std::cout, std::cerr);
}
