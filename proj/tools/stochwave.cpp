#include "stochwave/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return stochwave::cli::main_entry(argc, argv, std::cout, std::cerr);
}
