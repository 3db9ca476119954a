#include "admd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return admd::cli::main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
