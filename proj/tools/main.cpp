#include <vector>

#include "rotpatch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rotpatch::cli::run(args);
}
