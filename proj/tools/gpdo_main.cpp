#include <iostream>

#include "gpdo/cli.hpp"

int main(int argc, char** argv) {
  return gpdo::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
