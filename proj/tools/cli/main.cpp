#include <iostream>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
  return cupsim::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
