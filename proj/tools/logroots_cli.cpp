#include <iostream>

#include "logroots/cli.hpp"

int main(int argc, char** argv) {
  return logroots::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
