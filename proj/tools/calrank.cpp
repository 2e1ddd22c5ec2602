#include <iostream>

#include "calrank/cli.hpp"

int main(int argc, char** argv) {
  return calrank::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
