#include <iostream>
#include <string>
#include <vector>

#include "fks/cli.hpp"
#include "fks/exec.hpp"

int main(int argc, char** argv) {
  fks::kernels::configure_threads();
  std::vector<std::string> args(argv + 1, argv + argc);
  return fks::cli::run(args, std::cout, std::cerr);
}
