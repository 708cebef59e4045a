#include <iostream>
#include <string>
#include <vector>

#include "weilform/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weilform::run_cli(args, std::cout, std::cerr);
}
