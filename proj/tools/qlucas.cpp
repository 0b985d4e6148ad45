#include <iostream>

#include "qlucas/cli.hpp"

int main(int argc, char** argv) {
  return qlucas::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
