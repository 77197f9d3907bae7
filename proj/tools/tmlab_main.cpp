#include <string>
#include <vector>

#include "tmlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tmlab::run_cli(args);
}
