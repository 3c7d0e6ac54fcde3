#include <cstdlib>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = hpcad::cli::run(args, std::cout, std::cerr);
  if (r.abandoned) {
    std::cout.flush();
    std::cerr.flush();
    std::_Exit(r.exit_code);
  }
  return r.exit_code;
}
