#include <unistd.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return portnet::cli::run(args, std::cout, std::cerr,
                           portnet::cli::color_enabled(isatty(STDERR_FILENO) != 0));
}
