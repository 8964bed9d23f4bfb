#include <iostream>

#include "selfbind/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return selfbind::cli::run(args, std::cout, std::cerr);
}
