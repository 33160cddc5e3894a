#include <iostream>

#include "spence_abel/cli.hpp"

int main(int argc, char** argv) {
  return spence_abel::cli::run(argc, argv, std::cout, std::cerr);
}
