#include <iostream>

#include "ideal_moments/cli.hpp"

int main(int argc, char** argv) {
  return ideal_moments::run_cli(argc, argv, std::cout, std::cerr);
}
