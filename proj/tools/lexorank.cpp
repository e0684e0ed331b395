#include <iostream>
#include <string>
#include <vector>

#include "lexorank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return lexorank::cli::dispatch(args, std::cout, std::cerr);
}
