#include <iostream>

#include "zladder/cli.hpp"

int main(int argc, char** argv) {
  return zladder::cli::cli_main(argc, argv, std::cout, std::cerr);
}
