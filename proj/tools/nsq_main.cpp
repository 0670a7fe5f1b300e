#include <iostream>
#include <string>
#include <vector>

#include "nsq/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return nsq::cli::main(args, std::cout, std::cerr);
}
